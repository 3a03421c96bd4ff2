//! Finitely presented groups: free-group words, presentations, HLT coset
//! enumeration, and identification of small groups.
//!
//! The enumerator is the classic relator-based (HLT) Todd-Coxeter procedure
//! with a coincidence queue instead of recursion, a fixed scan order
//! (relators in declaration order, cosets in creation order) so runs are
//! reproducible, and a coset limit that turns runaway enumerations into an
//! explicit `Overflowed` status rather than an error.  Complete tables are
//! compressed and renumbered breadth-first, after which they can be turned
//! into multiplication tables and compared up to isomorphism.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::exact::{smith_normal_form, IntMatrix};

/// Default bound on the number of cosets allocated during enumeration.
pub const DEFAULT_COSET_LIMIT: usize = 1_000_000;

/// Bound on multiplication-table sizes (validation is cubic).
const MAX_MUL_TABLE: usize = 256;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FpGroupError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("coset table is not complete")]
    IncompleteTable,
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("expected {expected} generator images, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("element index {0} out of range")]
    BadElementIndex(usize),
    #[error("group of order {0} is too large for table operations")]
    TooLarge(usize),
}

// ---------------------------------------------------------------------------
// Words
// ---------------------------------------------------------------------------

/// A freely reduced word in a free group: letters are nonzero signed
/// 1-based generator indices (`2` means the second generator, `-2` its
/// inverse).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct Word {
    letters: Vec<i32>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    /// The single-letter word for generator `index` (0-based).
    pub fn generator(index: usize) -> Self {
        Word {
            letters: vec![index as i32 + 1],
        }
    }

    /// Build from raw letters, performing free reduction.  Zero letters are
    /// rejected.
    pub fn from_letters(letters: &[i32]) -> Result<Self, FpGroupError> {
        if letters.contains(&0) {
            return Err(FpGroupError::Parse("letter 0 is not a generator".into()));
        }
        Ok(Word {
            letters: reduce(letters.iter().copied()),
        })
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        Word {
            letters: reduce(
                self.letters
                    .iter()
                    .chain(other.letters.iter())
                    .copied(),
            ),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Remove cancelling first/last letters until none remain.
    pub fn cyclically_reduced(&self) -> Self {
        let mut ls = self.letters.clone();
        while ls.len() >= 2 && ls[0] == -ls[ls.len() - 1] {
            ls.pop();
            ls.remove(0);
        }
        Word { letters: ls }
    }
}

impl std::ops::Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

fn reduce(letters: impl Iterator<Item = i32>) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Presentations
// ---------------------------------------------------------------------------

/// A finite presentation: named generators and freely + cyclically reduced
/// relators.  Relators that reduce to the identity are dropped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    gens: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(gens: &[&str], relators: Vec<Word>) -> Result<Self, FpGroupError> {
        let gens: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        for (i, g) in gens.iter().enumerate() {
            if !is_identifier(g) {
                return Err(FpGroupError::Parse(format!("bad generator name `{g}`")));
            }
            if gens[..i].contains(g) {
                return Err(FpGroupError::Parse(format!("duplicate generator `{g}`")));
            }
        }
        let n = gens.len() as i32;
        let mut reduced = Vec::new();
        for r in relators {
            if r.letters().iter().any(|l| l.abs() > n) {
                return Err(FpGroupError::Parse(format!(
                    "relator uses a generator index beyond the {n} declared"
                )));
            }
            let r = r.cyclically_reduced();
            if !r.is_empty() {
                reduced.push(r);
            }
        }
        Ok(Presentation {
            gens,
            relators: reduced,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.gens
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Parse `<g1, g2, ... | rel1, rel2, ...>`.  Relators are `*`-separated
    /// products of `name` or `name^exp` factors; an entry `lhs = rhs` is
    /// converted to the relator `lhs * rhs^-1`.  An empty relator list gives
    /// a free group.
    pub fn parse(text: &str) -> Result<Self, FpGroupError> {
        let t = text.trim();
        let inner = t
            .strip_prefix('<')
            .and_then(|s| s.strip_suffix('>'))
            .ok_or_else(|| FpGroupError::Parse("presentation must be <...|...>".into()))?;
        let (gens_part, rels_part) = inner
            .split_once('|')
            .ok_or_else(|| FpGroupError::Parse("missing `|` separator".into()))?;
        if rels_part.contains('|') {
            return Err(FpGroupError::Parse("more than one `|`".into()));
        }
        let gen_names: Vec<&str> = gens_part
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        let stub = Presentation::new(&gen_names, Vec::new())?;
        let mut relators = Vec::new();
        for chunk in rels_part.split(',').map(str::trim) {
            if chunk.is_empty() {
                continue;
            }
            let word = match chunk.split_once('=') {
                Some((lhs, rhs)) => {
                    let l = stub.parse_word(lhs)?;
                    let r = stub.parse_word(rhs)?;
                    l.concat(&r.inverse())
                }
                None => stub.parse_word(chunk)?,
            };
            relators.push(word);
        }
        Presentation::new(&gen_names, relators)
    }

    /// Parse a word like `w^2*x*w^-5*x` (or `1` for the identity).
    pub fn parse_word(&self, text: &str) -> Result<Word, FpGroupError> {
        let t = text.trim();
        if t == "1" {
            return Ok(Word::identity());
        }
        let mut letters = Vec::new();
        for token in t.split('*').map(str::trim) {
            if token.is_empty() {
                return Err(FpGroupError::Parse(format!("empty factor in `{text}`")));
            }
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => {
                    let exp: i64 = e.trim().parse().map_err(|_| {
                        FpGroupError::Parse(format!("bad exponent in `{token}`"))
                    })?;
                    (n.trim(), exp)
                }
                None => (token, 1),
            };
            let idx = self
                .gens
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| FpGroupError::UnknownGenerator(name.to_string()))?;
            let letter = (idx + 1) as i32;
            for _ in 0..exp.unsigned_abs() {
                letters.push(if exp < 0 { -letter } else { letter });
            }
        }
        Word::from_letters(&letters)
    }

    /// Render a word with this presentation's generator names, grouping runs
    /// into powers: `w^2*x*w^-5*x`.  The identity prints as `1`.
    pub fn word_string(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let ls = w.letters();
        let mut i = 0;
        while i < ls.len() {
            let l = ls[i];
            let mut run = 1usize;
            while i + run < ls.len() && ls[i + run] == l {
                run += 1;
            }
            let name = &self.gens[(l.unsigned_abs() as usize) - 1];
            let exp = if l < 0 { -(run as i64) } else { run as i64 };
            parts.push(if exp == 1 {
                name.clone()
            } else {
                format!("{name}^{exp}")
            });
            i += run;
        }
        parts.join("*")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_string(r)).collect();
        write!(f, "<{} | {}>", self.gens.join(", "), rels.join(", "))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

// ---------------------------------------------------------------------------
// Coset enumeration
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TableStatus {
    Complete,
    Overflowed,
}

impl fmt::Display for TableStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableStatus::Complete => write!(f, "complete"),
            TableStatus::Overflowed => write!(f, "overflowed"),
        }
    }
}

/// The action of the generators on right cosets, compressed and renumbered
/// breadth-first from coset 0 (the subgroup itself).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CosetTable {
    ngens: usize,
    status: TableStatus,
    table: Vec<Vec<Option<usize>>>,
}

impl CosetTable {
    /// Enumerate the cosets of the subgroup generated by `subgroup` inside
    /// the presented group.  `limit` bounds the number of cosets *allocated*
    /// (live plus collapsed); exceeding it yields `TableStatus::Overflowed`.
    pub fn enumerate(pres: &Presentation, subgroup: &[Word], limit: usize) -> CosetTable {
        let mut e = Enumerator::new(pres.generators().len(), limit.max(2));
        for w in subgroup {
            e.scan_and_fill(0, w.letters());
            if e.overflowed {
                break;
            }
        }
        let mut alpha = 0;
        while alpha < e.table.len() && !e.overflowed {
            if e.find(alpha) != alpha {
                alpha += 1;
                continue;
            }
            for rel in pres.relators() {
                e.scan_and_fill(alpha, rel.letters());
                if e.overflowed || e.find(alpha) != alpha {
                    break;
                }
            }
            if !e.overflowed && e.find(alpha) == alpha {
                // Fill the remaining slots so the final table is total.
                for c in 0..e.cols {
                    if e.table[alpha][c].is_none() && e.define(alpha, c).is_none() {
                        break;
                    }
                }
            }
            alpha += 1;
        }
        e.finish()
    }

    pub fn status(&self) -> TableStatus {
        self.status
    }

    pub fn num_cosets(&self) -> usize {
        self.table.len()
    }

    pub fn num_generators(&self) -> usize {
        self.ngens
    }

    /// Complete status and a fully defined table.
    pub fn is_complete(&self) -> bool {
        self.status == TableStatus::Complete
            && self.table.iter().all(|row| row.iter().all(Option::is_some))
    }

    /// Image of a coset under a signed 1-based generator letter.
    pub fn action(&self, coset: usize, letter: i32) -> Option<usize> {
        self.table.get(coset).and_then(|row| row[col(letter)])
    }

    /// Trace a whole word from a coset; `None` if any step is undefined.
    pub fn trace(&self, coset: usize, word: &Word) -> Option<usize> {
        word.letters()
            .iter()
            .try_fold(coset, |c, &l| self.action(c, l))
    }
}

fn col(letter: i32) -> usize {
    debug_assert!(letter != 0);
    let g = (letter.unsigned_abs() as usize) - 1;
     2 * g + usize::from(letter < 0)
}

struct Enumerator {
    cols: usize,
    limit: usize,
    overflowed: bool,
    /// Allocated rows; dead rows linger until `finish`.
    table: Vec<Vec<Option<usize>>>,
    /// Union-find representatives (the smaller coset wins a collapse).
    rep: Vec<usize>,
}

impl Enumerator {
    fn new(ngens: usize, limit: usize) -> Self {
        Enumerator {
            cols: 2 * ngens,
            limit,
            overflowed: false,
            table: vec![vec![None; 2 * ngens]],
            rep: vec![0],
        }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.rep[a] != a {
            self.rep[a] = self.rep[self.rep[a]];
            a = self.rep[a];
        }
        a
    }

    /// Allocate a new coset as the image of `a` under column `c`.
    fn define(&mut self, a: usize, c: usize) -> Option<usize> {
        if self.table.len() >= self.limit {
            self.overflowed = true;
            return None;
        }
        let n = self.table.len();
        self.table.push(vec![None; self.cols]);
        self.rep.push(n);
        self.table[a][c] = Some(n);
        self.table[n][c ^ 1] = Some(a);
        Some(n)
    }

    fn merge(&mut self, a: usize, b: usize, queue: &mut VecDeque<usize>) {
        let a = self.find(a);
        let b = self.find(b);
        if a != b {
            let (keep, die) = if a < b { (a, b) } else { (b, a) };
            self.rep[die] = keep;
            queue.push_back(die);
        }
    }

    /// Process a discovered equality of cosets, migrating the dead rows'
    /// entries onto their representatives and queueing any further
    /// coincidences this uncovers.
    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::new();
        self.merge(a, b, &mut queue);
        while let Some(dead) = queue.pop_front() {
            let row = std::mem::replace(&mut self.table[dead], vec![None; self.cols]);
            for (c, entry) in row.into_iter().enumerate() {
                let Some(f) = entry else { continue };
                // Retire the paired back-pointer if it still points here.
                if self.table[f][c ^ 1] == Some(dead) {
                    self.table[f][c ^ 1] = None;
                }
                let mu = self.find(dead);
                let nu = self.find(f);
                if let Some(g) = self.table[mu][c] {
                    self.merge(nu, g, &mut queue);
                } else if let Some(g) = self.table[nu][c ^ 1] {
                    self.merge(mu, g, &mut queue);
                } else {
                    self.table[mu][c] = Some(nu);
                    self.table[nu][c ^ 1] = Some(mu);
                }
            }
        }
    }

    /// HLT scan of one word at one coset, defining new cosets to close it.
    fn scan_and_fill(&mut self, alpha: usize, letters: &[i32]) {
        if letters.is_empty() {
            return;
        }
        let mut f = alpha; // forward end, has consumed letters[..i]
        let mut b = alpha; // backward end, has consumed letters[j+1..]
        let mut i: isize = 0;
        let mut j: isize = letters.len() as isize - 1;
        loop {
            while i <= j {
                match self.table[f][col(letters[i as usize])] {
                    Some(d) => {
                        f = self.find(d);
                        i += 1;
                    }
                    None => break,
                }
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i {
                match self.table[b][col(letters[j as usize]) ^ 1] {
                    Some(d) => {
                        b = self.find(d);
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i {
                // Both scans met with nothing left: the ends must agree.
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            } else if j == i {
                // Exactly one undefined step: a deduction closes the scan.
                let c = col(letters[i as usize]);
                self.table[f][c] = Some(b);
                self.table[b][c ^ 1] = Some(f);
                return;
            } else if self.define(f, col(letters[i as usize])).is_none() {
                return; // overflow
            }
        }
    }

    /// Drop dead rows, renumber the survivors breadth-first from coset 0,
    /// and freeze the result.
    fn finish(mut self) -> CosetTable {
        let n = self.table.len();
        let roots: Vec<usize> = (0..n).map(|r| self.find(r)).collect();
        let mut compact_index = vec![usize::MAX; n];
        let mut live = Vec::new();
        for r in 0..n {
            if roots[r] == r {
                compact_index[r] = live.len();
                live.push(r);
            }
        }
        let compact: Vec<Vec<Option<usize>>> = live
            .iter()
            .map(|&r| {
                (0..self.cols)
                    .map(|c| self.table[r][c].map(|d| compact_index[roots[d]]))
                    .collect()
            })
            .collect();

        // Breadth-first relabelling along the positive generator columns
        // (in a complete table they already reach every coset, and the
        // numbering they induce is the natural one: a cyclic group reads
        // 0 -> 1 -> 2 -> ...).  Rows left unreachable — only possible after
        // an overflow — keep their relative order at the end.
        let m = compact.len();
        let mut new_index = vec![usize::MAX; m];
        let mut order = Vec::with_capacity(m);
        new_index[0] = 0;
        order.push(0);
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            head += 1;
            for col in (0..self.cols).step_by(2) {
                if let Some(d) = compact[c][col] {
                    if new_index[d] == usize::MAX {
                        new_index[d] = order.len();
                        order.push(d);
                    }
                }
            }
        }
        for (r, slot) in new_index.iter_mut().enumerate() {
            if *slot == usize::MAX {
                *slot = order.len();
                order.push(r);
            }
        }
        let table = order
            .iter()
            .map(|&old| {
                (0..self.cols)
                    .map(|c| compact[old][c].map(|d| new_index[d]))
                    .collect()
            })
            .collect();
        CosetTable {
            ngens: self.cols / 2,
            status: if self.overflowed {
                TableStatus::Overflowed
            } else {
                TableStatus::Complete
            },
            table,
        }
    }
}

// ---------------------------------------------------------------------------
// Multiplication tables
// ---------------------------------------------------------------------------

/// A fully validated multiplication table of a small group.  Element 0 is
/// the identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MulTable {
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    /// Element index realising each presentation generator, when the table
    /// came from one (empty otherwise).
    generator_elements: Vec<usize>,
}

impl MulTable {
    /// Interpret a complete coset table as the regular representation: the
    /// cosets of the trivial (or a normal) subgroup form a group under
    /// concatenation of representative words.  Associativity, identity and
    /// inverses are checked, so a non-normal subgroup is rejected rather
    /// than silently accepted.
    pub fn from_coset_table(t: &CosetTable) -> Result<MulTable, FpGroupError> {
        if !t.is_complete() {
            return Err(FpGroupError::IncompleteTable);
        }
        let n = t.num_cosets();
        if n > MAX_MUL_TABLE {
            return Err(FpGroupError::TooLarge(n));
        }
        // Representative words (as signed letters) via breadth-first search.
        let mut rep_word: Vec<Option<Vec<i32>>> = vec![None; n];
        rep_word[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            let prefix = rep_word[c].clone().expect("visited");
            for g in 0..t.num_generators() {
                for letter in [(g + 1) as i32, -((g + 1) as i32)] {
                    let d = t.action(c, letter).expect("complete table");
                    if rep_word[d].is_none() {
                        let mut w = prefix.clone();
                        w.push(letter);
                        rep_word[d] = Some(w);
                        queue.push_back(d);
                    }
                }
            }
        }
        if rep_word.iter().any(Option::is_none) {
            return Err(FpGroupError::NotAGroup(
                "coset graph is not connected".into(),
            ));
        }
        let trace = |start: usize, w: &[i32]| -> usize {
            w.iter()
                .fold(start, |c, &l| t.action(c, l).expect("complete table"))
        };
        let mul: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| trace(a, rep_word[b].as_ref().expect("connected")))
                    .collect()
            })
            .collect();
        let generator_elements = (0..t.num_generators())
            .map(|g| t.action(0, (g + 1) as i32).expect("complete table"))
            .collect();
        MulTable::validated(mul, generator_elements)
    }

    /// The cyclic group of order `n`.
    pub fn cyclic(n: usize) -> Result<MulTable, FpGroupError> {
        if n == 0 {
            return Err(FpGroupError::NotAGroup("empty table".into()));
        }
        let mul = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        MulTable::validated(mul, vec![1 % n])
    }

    /// Direct product; element `(a, b)` is index `a * |B| + b`.
    pub fn direct_product(x: &MulTable, y: &MulTable) -> Result<MulTable, FpGroupError> {
        let (nx, ny) = (x.order(), y.order());
        let n = nx * ny;
        if n > MAX_MUL_TABLE {
            return Err(FpGroupError::TooLarge(n));
        }
        let mul = (0..n)
            .map(|p| {
                (0..n)
                    .map(|q| x.mul(p / ny, q / ny) * ny + y.mul(p % ny, q % ny))
                    .collect()
            })
            .collect();
        let mut gens: Vec<usize> = x.generator_elements.iter().map(|&g| g * ny).collect();
        gens.extend(y.generator_elements.iter().copied());
        MulTable::validated(mul, gens)
    }

    // Index loops mirror the table axioms being checked.
    #[allow(clippy::needless_range_loop)]
    fn validated(
        mul: Vec<Vec<usize>>,
        generator_elements: Vec<usize>,
    ) -> Result<MulTable, FpGroupError> {
        let n = mul.len();
        if n == 0 || n > MAX_MUL_TABLE {
            return Err(FpGroupError::TooLarge(n));
        }
        if mul.iter().any(|row| row.len() != n)
            || mul.iter().flatten().any(|&v| v >= n)
            || generator_elements.iter().any(|&g| g >= n)
        {
            return Err(FpGroupError::NotAGroup("malformed table".into()));
        }
        for a in 0..n {
            if mul[0][a] != a || mul[a][0] != a {
                return Err(FpGroupError::NotAGroup("0 is not an identity".into()));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mul[a][b] == 0) {
                Some(b) if mul[b][a] == 0 => inv[a] = b,
                _ => return Err(FpGroupError::NotAGroup(format!("{a} has no inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(FpGroupError::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(MulTable {
            mul,
            inv,
            generator_elements,
        })
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn generator_elements(&self) -> &[usize] {
        &self.generator_elements
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut acc = a;
        let mut k = 1;
        while acc != 0 {
            acc = self.mul(acc, a);
            k += 1;
        }
        k
    }

    /// Evaluate a word at a list of generator images.
    pub fn eval_word(&self, word: &Word, images: &[usize]) -> Result<usize, FpGroupError> {
        word.letters().iter().try_fold(0usize, |acc, &l| {
            let idx = (l.unsigned_abs() as usize) - 1;
            let img = *images
                .get(idx)
                .ok_or(FpGroupError::BadElementIndex(idx))?;
            Ok(self.mul(acc, if l < 0 { self.inv(img) } else { img }))
        })
    }

    /// Smallest subgroup containing the given elements.
    pub fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set = BTreeSet::from([0usize]);
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    stack.push(y);
                }
            }
        }
        set
    }

    /// A small generating set, grown greedily by element index.
    pub fn minimal_generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&gens);
        for e in 1..self.order() {
            if span.len() == self.order() {
                break;
            }
            if !span.contains(&e) {
                gens.push(e);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Structural summary used for quick comparison and reporting.
    pub fn identify(&self) -> GroupFingerprint {
        let n = self.order();
        let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();
        for a in 0..n {
            *histogram.entry(self.element_order(a)).or_insert(0) += 1;
        }
        let abelian = (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)));
        let center_order = (0..n)
            .filter(|&a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
            .count();
        let commutators: Vec<usize> = {
            let mut set = BTreeSet::new();
            for a in 0..n {
                for b in 0..n {
                    let c = self.mul(
                        self.mul(self.inv(a), self.inv(b)),
                        self.mul(a, b),
                    );
                    set.insert(c);
                }
            }
            set.into_iter().collect()
        };
        let derived_order = self.closure(&commutators).len();
        GroupFingerprint {
            order: n,
            abelian,
            center_order,
            derived_order,
            order_histogram: histogram,
        }
    }
}

/// Invariants of a small group: enough to separate the groups handled here.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupFingerprint {
    pub order: usize,
    pub abelian: bool,
    pub center_order: usize,
    pub derived_order: usize,
    pub order_histogram: BTreeMap<usize, usize>,
}

/// Exhaustive isomorphism test for small groups: map a minimal generating
/// set of `a` onto same-order elements of `b` and check whether the induced
/// map is a bijective homomorphism.
pub fn isomorphic(a: &MulTable, b: &MulTable) -> bool {
    if a.identify() != b.identify() {
        return false;
    }
    let gens = a.minimal_generating_set();
    if gens.is_empty() {
        return b.order() == 1;
    }
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let o = a.element_order(g);
            (0..b.order()).filter(|&e| b.element_order(e) == o).collect()
        })
        .collect();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice
            .iter()
            .zip(&candidates)
            .map(|(&i, c)| c[i])
            .collect();
        if extends_to_isomorphism(a, &gens, b, &images) {
            return true;
        }
        // Odometer step through the candidate tuples.
        let mut pos = gens.len();
        loop {
            if pos == 0 {
                return false;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < candidates[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

fn extends_to_isomorphism(
    a: &MulTable,
    gens: &[usize],
    b: &MulTable,
    images: &[usize],
) -> bool {
    let n = a.order();
    let mut map = vec![usize::MAX; n];
    let mut hit = vec![false; b.order()];
    map[0] = 0;
    hit[0] = true;
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        for (&g, &h) in gens.iter().zip(images) {
            let xg = a.mul(x, g);
            let yh = b.mul(map[x], h);
            if map[xg] == usize::MAX {
                if hit[yh] {
                    return false; // two elements would share an image
                }
                map[xg] = yh;
                hit[yh] = true;
                stack.push(xg);
            } else if map[xg] != yh {
                return false; // not a well-defined homomorphism
            }
        }
    }
    map.iter().all(|&v| v != usize::MAX)
}

// ---------------------------------------------------------------------------
// Homomorphisms and abelianization
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HomStatus {
    /// Some relator does not map to the identity.
    NotHom,
    /// A homomorphism whose image is a proper subgroup.
    Hom,
    /// A homomorphism whose images generate the whole target.
    Epimorphism,
}

impl fmt::Display for HomStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomStatus::NotHom => write!(f, "not_hom"),
            HomStatus::Hom => write!(f, "hom"),
            HomStatus::Epimorphism => write!(f, "epimorphism"),
        }
    }
}

/// Decide whether sending the presentation's generators to `images` defines
/// a homomorphism into the table's group, and if so whether it is onto.
pub fn verify_homomorphism(
    pres: &Presentation,
    target: &MulTable,
    images: &[usize],
) -> Result<HomStatus, FpGroupError> {
    if images.len() != pres.generators().len() {
        return Err(FpGroupError::WrongImageCount {
            expected: pres.generators().len(),
            got: images.len(),
        });
    }
    if let Some(&bad) = images.iter().find(|&&i| i >= target.order()) {
        return Err(FpGroupError::BadElementIndex(bad));
    }
    for rel in pres.relators() {
        if target.eval_word(rel, images)? != 0 {
            return Ok(HomStatus::NotHom);
        }
    }
    if target.closure(images).len() == target.order() {
        Ok(HomStatus::Epimorphism)
    } else {
        Ok(HomStatus::Hom)
    }
}

/// Invariant factors of the abelianized group: the nontrivial torsion
/// factors in ascending divisibility order, followed by one `0` per free
/// rank.  The free group of rank 2 gives `[0, 0]`.
pub fn abelianization(pres: &Presentation) -> Vec<BigInt> {
    let n = pres.generators().len();
    let rows: Vec<Vec<i64>> = pres
        .relators()
        .iter()
        .map(|r| {
            let mut row = vec![0i64; n];
            for &l in r.letters() {
                row[(l.unsigned_abs() as usize) - 1] += if l < 0 { -1 } else { 1 };
            }
            row
        })
        .collect();
    let torsion_rank;
    let mut out: Vec<BigInt> = Vec::new();
    if rows.is_empty() {
        torsion_rank = 0;
    } else {
        let snf = smith_normal_form(&IntMatrix::from_rows(&rows));
        torsion_rank = snf.invariant_factors.len();
        out.extend(
            snf.invariant_factors
                .iter()
                .map(|f| f.abs())
                .filter(|f| !f.is_one()),
        );
    }
    out.extend(std::iter::repeat_n(BigInt::from(0), n - torsion_rank));
    out
}

// ---------------------------------------------------------------------------
// Built-in presentations
// ---------------------------------------------------------------------------

/// The six-generator presentation with braid-style relations whose quotient
/// collapses to a group of order 42.  Generators are named `r1` .. `r6`.
pub fn vankampen_presentation() -> Presentation {
    let r = |i: usize| Word::generator(i); // r(0) = r1
    let om = &r(5) * &r(4); // r6*r5
    let ta = &r(1) * &r(0); // r2*r1
    let rho2p = &(&ta.inverse() * &r(0)) * &ta;
    let rho1p = &(&ta.pow(-2) * &r(1)) * &ta.pow(2);
    let a = &(&(&r(3) * &rho2p) * &rho1p) * &rho2p.inverse();
    let b = &(&rho2p * &rho1p) * &rho2p.inverse();
    let relators = vec![
        &r(3) * &r(4).inverse(),
        &r(2) * &(&(&r(3).inverse() * &r(5)) * &r(3)).inverse(),
        &(&om.pow(3) * &r(5)) * &(&r(3) * &om.pow(3)).inverse(),
        &(&ta.pow(3) * &r(1)) * &(&r(0) * &ta.pow(3)).inverse(),
        &r(2) * &(&(&ta.inverse() * &r(0)) * &ta).inverse(),
        &(&a.pow(3) * &r(3)) * &(&b * &a.pow(3)).inverse(),
        &om.pow(2) * &ta,
    ];
    Presentation::new(&["r1", "r2", "r3", "r4", "r5", "r6"], relators)
        .expect("fixed presentation is well formed")
}

/// Named presentations shared by the tests and the command-line tools.
pub fn named_presentation(name: &str) -> Option<Presentation> {
    let text = match name {
        "G" => "<w, x | x^2, w^-2*x*w^5*x>",
        "G-alt" => "<w, x | x^2, w^21, x*w^15*x*w^-6, w^7*x*w^-7*x^-1>",
        "d14c3" => "<a, b, x | x^2, a^3, b^7, x*b*x*b^-6, a*b*a^-1*b^-1, a*x*a^-1*x^-1>",
        "vankampen" => return Some(vankampen_presentation()),
        _ => return None,
    };
    Some(Presentation::parse(text).expect("fixed presentation parses"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_of(pres: &Presentation) -> MulTable {
        let t = CosetTable::enumerate(pres, &[], DEFAULT_COSET_LIMIT);
        MulTable::from_coset_table(&t).expect("finite group")
    }

    #[test]
    fn word_arithmetic() {
        let w = Word::from_letters(&[1, -1, 2]).unwrap();
        assert_eq!(w.letters(), &[2]);
        let u = Word::from_letters(&[1, 2]).unwrap();
        assert_eq!((&u * &u.inverse()).letters(), &[] as &[i32]);
        assert_eq!(u.pow(2).letters(), &[1, 2, 1, 2]);
        assert_eq!(u.pow(-1).letters(), &[-2, -1]);
        assert_eq!(u.pow(0), Word::identity());
        let conj = Word::from_letters(&[1, 2, -1]).unwrap();
        assert_eq!(conj.cyclically_reduced().letters(), &[2]);
        assert!(Word::from_letters(&[0]).is_err());
    }

    #[test]
    fn word_parsing_roundtrip() {
        let p = Presentation::parse("<w, x | >").unwrap();
        let w = p.parse_word("w^2*x*w^-5*x").unwrap();
        assert_eq!(w.letters(), &[1, 1, 2, -1, -1, -1, -1, -1, 2]);
        assert_eq!(p.word_string(&w), "w^2*x*w^-5*x");
        assert_eq!(p.word_string(&Word::identity()), "1");
        assert_eq!(p.parse_word("1").unwrap(), Word::identity());
        assert!(p.parse_word("y").is_err());
        assert!(p.parse_word("w^").is_err());
    }

    #[test]
    fn presentation_parsing() {
        let p = Presentation::parse("<a, b | a^3, b^7, a*b = b*a>").unwrap();
        assert_eq!(p.generators(), &["a".to_string(), "b".to_string()]);
        assert_eq!(p.relators().len(), 3);
        // The equation becomes a commutator relator.
        assert_eq!(p.relators()[2].letters(), &[1, 2, -1, -2]);
        assert_eq!(format!("{p}"), "<a, b | a^3, b^7, a*b*a^-1*b^-1>");
        assert!(Presentation::parse("no brackets").is_err());
        assert!(Presentation::parse("<a, a | a^2>").is_err());
        // Relators reducing to the identity are dropped.
        let q = Presentation::parse("<a | a*a^-1>").unwrap();
        assert!(q.relators().is_empty());
    }

    #[test]
    fn cyclic_five_enumerates() {
        let p = Presentation::parse("<x | x^5>").unwrap();
        let t = CosetTable::enumerate(&p, &[], DEFAULT_COSET_LIMIT);
        assert_eq!(t.status(), TableStatus::Complete);
        assert_eq!(t.num_cosets(), 5);
        // Standardised numbering: coset i * x = i + 1 mod 5.
        for i in 0..5 {
            assert_eq!(t.action(i, 1), Some((i + 1) % 5));
        }
        let m = MulTable::from_coset_table(&t).unwrap();
        assert!(isomorphic(&m, &MulTable::cyclic(5).unwrap()));
    }

    #[test]
    fn klein_four_group() {
        let p = Presentation::parse("<a, b | a^2, b^2, a*b*a^-1*b^-1>").unwrap();
        let m = table_of(&p);
        let id = m.identify();
        assert_eq!(id.order, 4);
        assert!(id.abelian);
        assert_eq!(id.order_histogram, BTreeMap::from([(1, 1), (2, 3)]));
        assert!(!isomorphic(&m, &MulTable::cyclic(4).unwrap()));
    }

    #[test]
    fn subgroup_cosets_have_the_right_index() {
        let p = Presentation::parse("<x | x^6>").unwrap();
        let sub = [p.parse_word("x^2").unwrap()];
        let t = CosetTable::enumerate(&p, &sub, DEFAULT_COSET_LIMIT);
        assert_eq!(t.status(), TableStatus::Complete);
        assert_eq!(t.num_cosets(), 2);
    }

    #[test]
    fn free_group_overflows() {
        let p = Presentation::parse("<a, b | >").unwrap();
        let t = CosetTable::enumerate(&p, &[], 50);
        assert_eq!(t.status(), TableStatus::Overflowed);
        assert!(MulTable::from_coset_table(&t).is_err());
    }

    #[test]
    fn both_42_presentations_agree() {
        let g = named_presentation("G").unwrap();
        let alt = named_presentation("G-alt").unwrap();
        let tg = table_of(&g);
        let ta = table_of(&alt);
        assert_eq!(tg.order(), 42);
        assert_eq!(ta.order(), 42);
        assert!(isomorphic(&tg, &ta));
    }

    #[test]
    fn table_relations_of_the_42_group() {
        let g = named_presentation("G").unwrap();
        let m = table_of(&g);
        let w = m.generator_elements()[0];
        let x = m.generator_elements()[1];
        assert_eq!(m.element_order(w), 21);
        assert_eq!(m.element_order(x), 2);
        let eval = |s: &str| m.eval_word(&g.parse_word(s).unwrap(), &[w, x]).unwrap();
        assert_eq!(eval("x*w^5*x*w^-2"), 0);
        assert_eq!(eval("x*w^15*x"), eval("w^6"));
        assert_eq!(eval("w^7*x*w^-7*x^-1"), 0);
    }

    #[test]
    fn fingerprint_of_the_42_group() {
        let m = table_of(&named_presentation("G").unwrap());
        let id = m.identify();
        assert_eq!(id.order, 42);
        assert!(!id.abelian);
        assert_eq!(id.center_order, 3);
        assert_eq!(id.derived_order, 7);
        assert_eq!(
            id.order_histogram,
            BTreeMap::from([(1, 1), (2, 7), (3, 2), (6, 14), (7, 6), (21, 12)])
        );
    }

    #[test]
    fn product_structure_of_the_42_group() {
        let d14 = table_of(&Presentation::parse("<r, s | r^7, s^2, s*r*s*r>").unwrap());
        assert_eq!(d14.order(), 14);
        let c3 = MulTable::cyclic(3).unwrap();
        let product = MulTable::direct_product(&d14, &c3).unwrap();
        let m = table_of(&named_presentation("G").unwrap());
        assert_eq!(product.identify(), m.identify());
        assert!(isomorphic(&m, &product));
        assert!(!isomorphic(&m, &MulTable::cyclic(42).unwrap()));
        // The d14c3 presentation gives the same group.
        let d = table_of(&named_presentation("d14c3").unwrap());
        assert!(isomorphic(&d, &m));
    }

    #[test]
    fn vankampen_collapses_to_order_42() {
        let p = vankampen_presentation();
        assert_eq!(p.generators().len(), 6);
        assert_eq!(p.relators().len(), 7);
        // The long braid relator reduces to exactly 28 letters.
        assert_eq!(p.relators()[5].len(), 28);
        let t = CosetTable::enumerate(&p, &[], DEFAULT_COSET_LIMIT);
        assert_eq!(t.status(), TableStatus::Complete);
        assert_eq!(t.num_cosets(), 42);
        let m = MulTable::from_coset_table(&t).unwrap();
        assert!(isomorphic(&m, &table_of(&named_presentation("G").unwrap())));
    }

    #[test]
    fn abelianizations() {
        let six = |p: &Presentation| abelianization(p);
        assert_eq!(six(&named_presentation("G").unwrap()), vec![BigInt::from(6)]);
        assert_eq!(
            six(&named_presentation("vankampen").unwrap()),
            vec![BigInt::from(6)]
        );
        assert_eq!(
            six(&named_presentation("d14c3").unwrap()),
            vec![BigInt::from(6)]
        );
        let free2 = Presentation::parse("<a, b | >").unwrap();
        assert_eq!(six(&free2), vec![BigInt::from(0), BigInt::from(0)]);
        // Z x Z/3 from a single relator.
        let mixed = Presentation::parse("<a, b | a^3>").unwrap();
        assert_eq!(six(&mixed), vec![BigInt::from(3), BigInt::from(0)]);
    }

    #[test]
    fn homomorphism_classification() {
        let g = named_presentation("G").unwrap();
        let d14c3 = table_of(&named_presentation("d14c3").unwrap());
        let a = d14c3.generator_elements()[0];
        let b = d14c3.generator_elements()[1];
        let x = d14c3.generator_elements()[2];
        // w -> a*b, x -> x: onto.
        assert_eq!(
            verify_homomorphism(&g, &d14c3, &[d14c3.mul(a, b), x]).unwrap(),
            HomStatus::Epimorphism
        );
        // Trivial images: a homomorphism, not onto.
        assert_eq!(
            verify_homomorphism(&g, &d14c3, &[0, 0]).unwrap(),
            HomStatus::Hom
        );
        let d14 = table_of(&Presentation::parse("<r, s | r^7, s^2, s*r*s*r>").unwrap());
        let r = d14.generator_elements()[0];
        let s = d14.generator_elements()[1];
        assert_eq!(
            verify_homomorphism(&g, &d14, &[r, s]).unwrap(),
            HomStatus::Epimorphism
        );
        // Killing x forces w^3 = 1, which r does not satisfy.
        assert_eq!(
            verify_homomorphism(&g, &d14, &[r, 0]).unwrap(),
            HomStatus::NotHom
        );
        assert!(verify_homomorphism(&g, &d14, &[r]).is_err());
        assert!(verify_homomorphism(&g, &d14, &[r, 99]).is_err());
    }

    #[test]
    fn coset_table_traces_relators_to_identity() {
        let p = named_presentation("G").unwrap();
        let t = CosetTable::enumerate(&p, &[], DEFAULT_COSET_LIMIT);
        for rel in p.relators() {
            for c in 0..t.num_cosets() {
                assert_eq!(t.trace(c, rel), Some(c));
            }
        }
        // Each generator column is a permutation.
        for g in 1..=2i32 {
            let mut seen = vec![false; t.num_cosets()];
            for c in 0..t.num_cosets() {
                let d = t.action(c, g).unwrap();
                assert!(!seen[d]);
                seen[d] = true;
            }
        }
    }
}
