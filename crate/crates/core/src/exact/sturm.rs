//! Real-root isolation for univariate rational polynomials.
//!
//! Roots are isolated by Sturm-chain bisection.  Rational roots are found
//! *exactly* and without integer factorisation: inside each isolating
//! interval we repeatedly probe the simplest rational (the Stern-Brocot
//! mediant walk).  If the isolated root is `p/q` in lowest terms then `q`
//! divides the leading coefficient `L` of the primitive integer form, so once
//! the interval is narrower than `1/L^2` it can contain at most one rational
//! of denominator `<= L` — the probe would already have found it — and the
//! root is certified irrational.  Exact roots are reported as intervals with
//! `lo == hi`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{MultiPoly, PolyError};
use super::scalar::{rat_int, Rat};

/// An interval `[lo, hi]` containing exactly one real root of the referenced
/// squarefree polynomial; `lo == hi` marks an exact rational root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rat,
    pub hi: Rat,
    /// Squarefree polynomial this interval isolates a root of.
    pub poly: MultiPoly<Rat>,
}

impl IsolatingInterval {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat_int(2)
    }
}

/// Isolate all real roots of a univariate polynomial into pairwise disjoint
/// intervals, sorted in increasing order.  Rational roots come back exact.
pub fn isolate_real_roots(p: &MultiPoly<Rat>) -> Result<Vec<IsolatingInterval>, PolyError> {
    let (var, dense) = to_dense(p)?;
    if dense.is_empty() {
        return Err(PolyError::ZeroPolynomial);
    }
    if dense.len() == 1 {
        return Ok(Vec::new());
    }
    let sf = squarefree_dense(&dense);
    let sf_poly = from_dense(&var, &sf);
    let (mut exact, open, residual) = isolate_squarefree(sf);

    let mut out: Vec<IsolatingInterval> = Vec::new();
    exact.sort();
    for r in &exact {
        out.push(IsolatingInterval {
            lo: r.clone(),
            hi: r.clone(),
            poly: sf_poly.clone(),
        });
    }
    for (mut lo, mut hi) in open {
        // Shrink until no exact rational root sits inside, so the intervals
        // are pairwise disjoint and each holds exactly one root of `sf_poly`.
        while exact.iter().any(|r| lo < *r && *r < hi) {
            let m = (&lo + &hi) / rat_int(2);
            // `residual` has no rational roots, so m is never a root.
            if sign(&eval_dense(&residual, &lo)) * sign(&eval_dense(&residual, &m)) < 0 {
                hi = m;
            } else {
                lo = m;
            }
        }
        out.push(IsolatingInterval {
            lo,
            hi,
            poly: sf_poly.clone(),
        });
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Number of distinct real roots.
pub fn count_distinct_real_roots(p: &MultiPoly<Rat>) -> Result<usize, PolyError> {
    Ok(isolate_real_roots(p)?.len())
}

/// Bisect an interval until it is no wider than `max_width`.
pub fn refine_interval(iv: &IsolatingInterval, max_width: &Rat) -> IsolatingInterval {
    if iv.is_exact() {
        return iv.clone();
    }
    let (_, dense) = to_dense(&iv.poly).expect("interval references a univariate polynomial");
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    // The sign at `lo` is invariant: `lo` only moves to a midpoint of
    // matching sign.
    let slo = sign(&eval_dense(&dense, &lo));
    debug_assert!(slo != 0 && slo == -sign(&eval_dense(&dense, &hi)));
    while &hi - &lo > *max_width {
        let m = (&lo + &hi) / rat_int(2);
        let sm = sign(&eval_dense(&dense, &m));
        if sm == 0 {
            return IsolatingInterval {
                lo: m.clone(),
                hi: m,
                poly: iv.poly.clone(),
            };
        }
        if sm == slo {
            lo = m;
        } else {
            hi = m;
        }
    }
    IsolatingInterval {
        lo,
        hi,
        poly: iv.poly.clone(),
    }
}

/// All rational roots of `p` with multiplicities, plus the quotient of `p` by
/// the corresponding linear factors (which has no rational roots).
#[allow(clippy::type_complexity)]
pub fn extract_rational_roots(
    p: &MultiPoly<Rat>,
) -> Result<(Vec<(Rat, u32)>, MultiPoly<Rat>), PolyError> {
    let (var, dense) = to_dense(p)?;
    if dense.is_empty() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut roots = Vec::new();
    let mut rest = dense;
    for iv in isolate_real_roots(p)? {
        if !iv.is_exact() {
            continue;
        }
        let r = iv.lo;
        let mut mult = 0u32;
        while let Some(q) = div_by_linear(&rest, &r) {
            rest = q;
            mult += 1;
        }
        debug_assert!(mult > 0);
        roots.push((r, mult));
    }
    Ok((roots, from_dense(&var, &rest)))
}

/// The unique rational of smallest denominator (smallest numerator among
/// ties) in the closed interval `[lo, hi]`.
pub fn simplest_rational_between(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo <= hi, "empty interval");
    let zero = Rat::zero();
    if *lo <= zero && zero <= *hi {
        zero
    } else if *lo > zero {
        simplest_positive(lo, hi)
    } else {
        -simplest_positive(&-hi.clone(), &-lo.clone())
    }
}

fn simplest_positive(lo: &Rat, hi: &Rat) -> Rat {
    // 0 < lo <= hi.  Walk the continued-fraction expansion shared by the
    // endpoints until an integer falls inside the interval.
    let ceil_lo = lo.ceil();
    if ceil_lo <= *hi {
        return ceil_lo;
    }
    let n = lo.floor();
    let inner = simplest_positive(
        &(&Rat::one() / &(hi - &n)),
        &(&Rat::one() / &(lo - &n)),
    );
    n + Rat::one() / inner
}

// ---- dense univariate helpers -------------------------------------------

/// Dense coefficients (index = power), trimmed.  Requires exactly one
/// variable in the polynomial's list.
pub(crate) fn to_dense(p: &MultiPoly<Rat>) -> Result<(String, Vec<Rat>), PolyError> {
    if p.vars().len() != 1 {
        return Err(PolyError::NotUnivariate(p.vars().join(",")));
    }
    let var = p.vars()[0].clone();
    let mut dense = vec![Rat::zero(); p.total_degree().map_or(0, |d| d as usize + 1)];
    for (m, c) in p.terms() {
        dense[m.exps()[0] as usize] = c.clone();
    }
    trim(&mut dense);
    Ok((var, dense))
}

pub(crate) fn from_dense(var: &str, dense: &[Rat]) -> MultiPoly<Rat> {
    MultiPoly::from_terms(
        &[var],
        dense
            .iter()
            .enumerate()
            .map(|(i, c)| (vec![i as u32], c.clone())),
    )
    .expect("dense coefficients are well-formed")
}

fn trim(v: &mut Vec<Rat>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn eval_dense(p: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in p.iter().rev() {
        acc = &acc * x + c;
    }
    acc
}

pub(crate) fn derivative_dense(p: &[Rat]) -> Vec<Rat> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * rat_int(i as i64))
        .collect()
}

/// Remainder of `a` divided by `b` over the rationals.
fn rem_dense(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert!(!b.is_empty());
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lcb = b[db].clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let q = r[dr].clone() / lcb.clone();
        for (k, bc) in b.iter().enumerate() {
            let idx = dr - db + k;
            r[idx] = &r[idx] - &(&q * bc);
        }
        r[dr] = Rat::zero();
        trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

pub(crate) fn gcd_dense(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem_dense(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lc) = x.last().cloned() {
        for c in &mut x {
            *c = &*c / &lc;
        }
    }
    x
}

fn squarefree_dense(p: &[Rat]) -> Vec<Rat> {
    if p.len() <= 1 {
        return p.to_vec();
    }
    let g = gcd_dense(p, &derivative_dense(p));
    if g.len() <= 1 {
        let mut out = p.to_vec();
        let lc = out.last().cloned().unwrap();
        for c in &mut out {
            *c = &*c / &lc;
        }
        return out;
    }
    let q = div_exact_dense(p, &g);
    let mut out = q;
    let lc = out.last().cloned().unwrap();
    for c in &mut out {
        *c = &*c / &lc;
    }
    out
}

pub(crate) fn div_exact_dense(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() {
        return Vec::new();
    }
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![Rat::zero(); a.len() - db];
    let lcb = b[db].clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr].clone() / lcb.clone();
        q[dr - db] = c.clone();
        for (k, bc) in b.iter().enumerate() {
            let idx = dr - db + k;
            r[idx] = &r[idx] - &(&c * bc);
        }
        trim(&mut r);
    }
    debug_assert!(r.is_empty(), "division was not exact");
    q
}

/// Divide by `x - r` if `r` is a root; `None` otherwise.
fn div_by_linear(p: &[Rat], r: &Rat) -> Option<Vec<Rat>> {
    if p.is_empty() || !eval_dense(p, r).is_zero() {
        return None;
    }
    // Synthetic division.
    let mut out = vec![Rat::zero(); p.len() - 1];
    let mut carry = Rat::zero();
    for i in (0..p.len()).rev() {
        let v = &p[i] + &(&carry * r);
        if i == 0 {
            debug_assert!(v.is_zero());
        } else {
            out[i - 1] = v.clone();
            carry = v;
        }
    }
    trim(&mut out);
    Some(out)
}

fn sign(x: &Rat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn sturm_chain(sf: &[Rat]) -> Vec<Vec<Rat>> {
    let mut chain = vec![sf.to_vec(), derivative_dense(sf)];
    loop {
        let k = chain.len();
        if chain[k - 1].len() <= 1 {
            if chain[k - 1].is_empty() {
                chain.pop();
            }
            break;
        }
        let mut r = rem_dense(&chain[k - 2], &chain[k - 1]);
        if r.is_empty() {
            break;
        }
        for c in &mut r {
            *c = -c.clone();
        }
        chain.push(r);
    }
    chain
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut count = 0;
    let mut last = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn variations_at(chain: &[Vec<Rat>], x: &Rat) -> usize {
    variations(chain.iter().map(|p| sign(&eval_dense(p, x))))
}

/// Cauchy bound: every real root lies strictly inside `[-B, B]`.
fn root_bound(p: &[Rat]) -> Rat {
    let lc = p.last().unwrap().clone();
    let mut max = Rat::zero();
    for c in &p[..p.len() - 1] {
        let q = (c / &lc).abs();
        if q > max {
            max = q;
        }
    }
    max + rat_int(1)
}

/// Absolute leading coefficient of the primitive integer form.
fn int_primitive_lc_abs(p: &[Rat]) -> BigInt {
    let mut lcm: BigInt = One::one();
    for c in p {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = p.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    let mut g: BigInt = Zero::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    (ints.last().unwrap() / g).abs()
}

enum Probe {
    Hit(Rat),
    Open(Rat, Rat),
}

/// Exhaustively separate the real roots of a squarefree dense polynomial.
/// Returns (exact rational roots, open intervals with irrational roots,
/// the quotient with all rational roots divided out).
fn isolate_squarefree(sf: Vec<Rat>) -> (Vec<Rat>, Vec<(Rat, Rat)>, Vec<Rat>) {
    let mut exact = Vec::new();
    let mut cur = sf;
    'restart: loop {
        if cur.len() <= 1 {
            return (exact, Vec::new(), cur);
        }
        let chain = sturm_chain(&cur);
        let bound = root_bound(&cur);
        let mut open = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((a, b)) = stack.pop() {
            let roots = variations_at(&chain, &a) - variations_at(&chain, &b);
            if roots == 0 {
                continue;
            }
            if roots == 1 {
                match probe_single_root(&cur, a, b) {
                    Probe::Hit(r) => {
                        cur = div_by_linear(&cur, &r).expect("verified root divides");
                        exact.push(r);
                        continue 'restart;
                    }
                    Probe::Open(lo, hi) => open.push((lo, hi)),
                }
                continue;
            }
            let m = (&a + &b) / rat_int(2);
            if eval_dense(&cur, &m).is_zero() {
                cur = div_by_linear(&cur, &m).expect("verified root divides");
                exact.push(m);
                continue 'restart;
            }
            stack.push((a, m.clone()));
            stack.push((m, b));
        }
        return (exact, open, cur);
    }
}

/// `(a, b)` contains exactly one root of the squarefree `cur`, and neither
/// endpoint is a root.  Either find the root as an exact rational, or narrow
/// far enough to certify it irrational.
fn probe_single_root(cur: &[Rat], a: Rat, b: Rat) -> Probe {
    let lc = int_primitive_lc_abs(cur);
    let threshold = Rat::new(One::one(), &lc * &lc);
    let mut lo = a;
    let mut hi = b;
    // The sign at `lo` is invariant under the bisection below.
    let sign_lo = sign(&eval_dense(cur, &lo));
    debug_assert!(sign_lo != 0 && sign_lo == -sign(&eval_dense(cur, &hi)));
    loop {
        let s = simplest_rational_between(&lo, &hi);
        if eval_dense(cur, &s).is_zero() {
            return Probe::Hit(s);
        }
        if &hi - &lo < threshold {
            return Probe::Open(lo, hi);
        }
        let m = (&lo + &hi) / rat_int(2);
        let sm = sign(&eval_dense(cur, &m));
        if sm == 0 {
            return Probe::Hit(m);
        }
        if sm == sign_lo {
            lo = m;
        } else {
            hi = m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{rat, rat_int};

    fn px(text: &str) -> MultiPoly<Rat> {
        MultiPoly::parse(text, &["x"]).unwrap()
    }

    #[test]
    fn isolates_sqrt_two() {
        let ivs = isolate_real_roots(&px("x^2 - 2")).unwrap();
        assert_eq!(ivs.len(), 2);
        assert!(!ivs[0].is_exact() && !ivs[1].is_exact());
        // Positive branch contains sqrt(2): lo^2 < 2 < hi^2 with lo > 0.
        let pos = &ivs[1];
        assert!(pos.lo > Rat::zero());
        assert!(&pos.lo * &pos.lo < rat_int(2));
        assert!(&pos.hi * &pos.hi > rat_int(2));
    }

    #[test]
    fn finds_rational_roots_exactly() {
        let ivs = isolate_real_roots(&px("x^3 - x")).unwrap();
        let roots: Vec<Rat> = ivs
            .iter()
            .map(|iv| {
                assert!(iv.is_exact());
                iv.lo.clone()
            })
            .collect();
        assert_eq!(roots, vec![rat_int(-1), rat_int(0), rat_int(1)]);

        // A root with a larger denominator, mixed with irrationals.
        let p = &px("3*x - 2") * &px("x^2 - 3");
        let ivs = isolate_real_roots(&p).unwrap();
        assert_eq!(ivs.len(), 3);
        assert_eq!(ivs[1].lo, rat(2, 3));
        assert!(ivs[1].is_exact());
        assert!(!ivs[0].is_exact() && !ivs[2].is_exact());
    }

    #[test]
    fn no_real_roots_and_zero_input() {
        assert_eq!(isolate_real_roots(&px("x^2 + 1")).unwrap().len(), 0);
        assert_eq!(isolate_real_roots(&px("5")).unwrap().len(), 0);
        assert!(matches!(
            isolate_real_roots(&MultiPoly::zero(&["x"])),
            Err(PolyError::ZeroPolynomial)
        ));
    }

    #[test]
    fn multiplicities_are_recovered() {
        let p = &(&px("2*x - 1").pow(2) * &px("x^2 - 3")) * &px("x + 4");
        let (roots, residual) = extract_rational_roots(&p).unwrap();
        assert_eq!(roots, vec![(rat_int(-4), 1), (rat(1, 2), 2)]);
        assert!(residual.proportionality(&px("x^2 - 3")).is_some());
    }

    #[test]
    fn six_consecutive_integers() {
        let mut p = px("1");
        for k in 1..=6 {
            p = &p * &px(&format!("x - {k}"));
        }
        let ivs = isolate_real_roots(&p).unwrap();
        assert_eq!(ivs.len(), 6);
        for (k, iv) in ivs.iter().enumerate() {
            assert!(iv.is_exact());
            assert_eq!(iv.lo, rat_int(k as i64 + 1));
        }
    }

    #[test]
    fn squarefree_input_not_required() {
        let p = &px("x^2 - 2").pow(3) * &px("x - 5").pow(2);
        let ivs = isolate_real_roots(&p).unwrap();
        assert_eq!(ivs.len(), 3);
        assert!(ivs[2].is_exact());
        assert_eq!(ivs[2].lo, rat_int(5));
    }

    #[test]
    fn refine_narrows_interval() {
        let ivs = isolate_real_roots(&px("x^2 - 2")).unwrap();
        let narrow = refine_interval(&ivs[1], &rat(1, 128));
        assert!(narrow.width() <= rat(1, 128));
        assert!(&narrow.lo * &narrow.lo < rat_int(2));
        assert!(&narrow.hi * &narrow.hi > rat_int(2));
    }

    #[test]
    fn simplest_rationals() {
        assert_eq!(
            simplest_rational_between(&rat(1, 3), &rat(1, 2)),
            rat(1, 2)
        );
        assert_eq!(
            simplest_rational_between(&rat(3, 10), &rat(17, 50)),
            rat(1, 3)
        );
        assert_eq!(
            simplest_rational_between(&rat(-1, 2), &rat(1, 3)),
            rat_int(0)
        );
        assert_eq!(
            simplest_rational_between(&rat(5, 2), &rat_int(3)),
            rat_int(3)
        );
        assert_eq!(
            simplest_rational_between(&rat(7, 3), &rat(7, 3)),
            rat(7, 3)
        );
        assert_eq!(
            simplest_rational_between(&rat(-22, 7), &rat(-3, 1)),
            rat_int(-3)
        );
    }
}
