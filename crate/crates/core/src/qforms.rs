//! Finite quadratic and bilinear forms on small abelian groups.
//!
//! A form lives on `Z/n1 x ... x Z/nk`, with bilinear values in Q/Z (stored
//! as reduced rationals in `[0,1)`) and quadratic values in Q/2Z (stored in
//! `[0,2)`).  Everything here is exhaustive: the groups of interest have at
//! most a few hundred elements, so subgroups, orthogonal complements and
//! eigenspaces are computed by enumeration rather than cleverness.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::exact::{rat, rat_int, Rat};

/// Hard cap on the group order for exhaustive operations.
const MAX_ENUMERATION: u64 = 100_000;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum QFormError {
    #[error("orders must be >= 1")]
    BadOrder,
    #[error("gram matrix is not symmetric or has the wrong shape")]
    BadGram,
    #[error("value {0} is incompatible with the generator orders")]
    BadDenominator(Rat),
    #[error("q({0}) and b({0},{0}) differ by a non-integer")]
    IncompatibleDiagonal(usize),
    #[error("element has {0} coefficients, form has rank {1}")]
    WrongLength(usize, usize),
    #[error("group of order {0} is too large for exhaustive enumeration")]
    TooLarge(u64),
    #[error("subgroup is not isotropic")]
    NotIsotropic,
    #[error("matrix is not invertible modulo {0}")]
    NotInvertible(u32),
    #[error("operation needs all cyclic orders equal, got {0:?}")]
    NotHomogeneous(Vec<u32>),
    #[error("matrix shape does not match the form rank")]
    BadMatrix,
}

/// Reduce into `[0, modulus)`.
fn reduce_mod(x: &Rat, modulus: i64) -> Rat {
    let m = rat_int(modulus);
    let mut r = x - (x / &m).floor() * &m;
    // Guard against `x` being an exact multiple.
    if r == m {
        r = rat_int(0);
    }
    r
}

/// An element of the underlying group, coefficients reduced mod the orders.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct GroupElement {
    coeffs: Vec<u32>,
}

impl GroupElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A subgroup, stored with its full element list (exhaustive scale).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subgroup {
    generators: Vec<GroupElement>,
    elements: BTreeSet<GroupElement>,
}

impl Subgroup {
    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = &GroupElement> {
        self.elements.iter()
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, e: &GroupElement) -> bool {
        self.elements.contains(e)
    }
}

/// A finite quadratic form: bilinear part in Q/Z, quadratic part in Q/2Z.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteQuadraticForm {
    orders: Vec<u32>,
    gram: Vec<Vec<Rat>>,
    q: Vec<Rat>,
}

impl FiniteQuadraticForm {
    /// Validated constructor.  `gram[i][j]` is `b(g_i, g_j)` as a rational
    /// (any representative; stored reduced mod 1), `q[i]` is `q(g_i)` (stored
    /// reduced mod 2).
    // Index loops mirror the symmetry conditions being checked.
    #[allow(clippy::needless_range_loop)]
    pub fn new(
        orders: Vec<u32>,
        gram: Vec<Vec<Rat>>,
        q: Vec<Rat>,
    ) -> Result<Self, QFormError> {
        let k = orders.len();
        if orders.contains(&0) {
            return Err(QFormError::BadOrder);
        }
        if gram.len() != k || gram.iter().any(|row| row.len() != k) || q.len() != k {
            return Err(QFormError::BadGram);
        }
        let gram: Vec<Vec<Rat>> = gram
            .iter()
            .map(|row| row.iter().map(|v| reduce_mod(v, 1)).collect())
            .collect();
        let q: Vec<Rat> = q.iter().map(|v| reduce_mod(v, 2)).collect();
        for i in 0..k {
            for j in 0..k {
                if gram[i][j] != gram[j][i] {
                    return Err(QFormError::BadGram);
                }
                // n_i * b(g_i, g_j) must vanish in Q/Z.
                let scaled = &gram[i][j] * rat_int(orders[i] as i64);
                if !scaled.is_integer() {
                    return Err(QFormError::BadDenominator(gram[i][j].clone()));
                }
            }
            // q must be well defined on Z/n_i: n*q in Z and n^2*q in 2Z.
            let n = rat_int(orders[i] as i64);
            let nq = &q[i] * &n;
            let nnq = &nq * &n;
            if !nq.is_integer() || !(&nnq / rat_int(2)).is_integer() {
                return Err(QFormError::BadDenominator(q[i].clone()));
            }
            // Polarisation on the diagonal: q(g) = b(g,g) mod 1.
            if !(&q[i] - &gram[i][i]).is_integer() {
                return Err(QFormError::IncompatibleDiagonal(i));
            }
        }
        Ok(FiniteQuadraticForm { orders, gram, q })
    }

    /// The zero form on the trivial group.
    pub fn trivial() -> Self {
        FiniteQuadraticForm {
            orders: Vec::new(),
            gram: Vec::new(),
            q: Vec::new(),
        }
    }

    /// Discriminant form of the negative-definite A_n root lattice: cyclic of
    /// order n+1 with q(generator) = -n/(n+1) mod 2Z.
    pub fn discr_an(n: u32) -> Self {
        let m = (n + 1) as i64;
        let b = reduce_mod(&rat(-(n as i64), m), 1);
        let q = reduce_mod(&rat(-(n as i64), m), 2);
        FiniteQuadraticForm {
            orders: vec![n + 1],
            gram: vec![vec![b]],
            q: vec![q],
        }
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(forms: &[Self]) -> Self {
        let mut orders = Vec::new();
        let mut q = Vec::new();
        for f in forms {
            orders.extend_from_slice(&f.orders);
            q.extend_from_slice(&f.q);
        }
        let k = orders.len();
        let mut gram = vec![vec![rat_int(0); k]; k];
        let mut off = 0usize;
        for f in forms {
            let r = f.orders.len();
            for i in 0..r {
                for j in 0..r {
                    gram[off + i][off + j] = f.gram[i][j].clone();
                }
            }
            off += r;
        }
        FiniteQuadraticForm { orders, gram, q }
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    /// Order of the underlying group.
    pub fn order(&self) -> u64 {
        self.orders.iter().map(|&n| n as u64).product()
    }

    /// Build an element from integer coefficients (reduced mod the orders).
    pub fn element(&self, coeffs: &[i64]) -> Result<GroupElement, QFormError> {
        if coeffs.len() != self.rank() {
            return Err(QFormError::WrongLength(coeffs.len(), self.rank()));
        }
        let reduced = coeffs
            .iter()
            .zip(&self.orders)
            .map(|(&c, &n)| (c.rem_euclid(n as i64)) as u32)
            .collect();
        Ok(GroupElement { coeffs: reduced })
    }

    pub fn zero_element(&self) -> GroupElement {
        GroupElement {
            coeffs: vec![0; self.rank()],
        }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .zip(&self.orders)
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect();
        GroupElement { coeffs }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&self.orders)
            .map(|(&x, &n)| (n - x) % n)
            .collect();
        GroupElement { coeffs }
    }

    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&self.orders)
            .map(|(&x, &n)| ((k.rem_euclid(n as i64) as u64 * x as u64) % n as u64) as u32)
            .collect();
        GroupElement { coeffs }
    }

    /// Additive order of an element.
    pub fn element_order(&self, a: &GroupElement) -> u64 {
        let mut acc = a.clone();
        let mut k = 1u64;
        while !acc.is_zero() {
            acc = self.add(&acc, a);
            k += 1;
        }
        k
    }

    /// All group elements, mixed-radix order.
    pub fn all_elements(&self) -> Result<Vec<GroupElement>, QFormError> {
        let total = self.order();
        if total > MAX_ENUMERATION {
            return Err(QFormError::TooLarge(total));
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut cur = vec![0u32; self.rank()];
        loop {
            out.push(GroupElement { coeffs: cur.clone() });
            let mut i = self.rank();
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < self.orders[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }

    /// Bilinear value in `[0, 1)`.
    pub fn b_value(&self, a: &GroupElement, b: &GroupElement) -> Rat {
        let mut acc = rat_int(0);
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let c = (a.coeffs[i] as i64) * (b.coeffs[j] as i64);
                acc += &self.gram[i][j] * rat_int(c);
            }
        }
        reduce_mod(&acc, 1)
    }

    /// Quadratic value in `[0, 2)`:
    /// `q(sum c_i g_i) = sum c_i^2 q(g_i) + 2 sum_{i<j} c_i c_j b(g_i, g_j)`.
    pub fn q_value(&self, a: &GroupElement) -> Rat {
        let mut acc = rat_int(0);
        for i in 0..self.rank() {
            let c = a.coeffs[i] as i64;
            acc += &self.q[i] * rat_int(c * c);
            for j in (i + 1)..self.rank() {
                let cc = c * (a.coeffs[j] as i64);
                acc += &self.gram[i][j] * rat_int(2 * cc);
            }
        }
        reduce_mod(&acc, 2)
    }

    /// Subgroup generated by the given elements (additive closure).
    pub fn subgroup(&self, gens: &[GroupElement]) -> Result<Subgroup, QFormError> {
        if self.order() > MAX_ENUMERATION {
            return Err(QFormError::TooLarge(self.order()));
        }
        let mut elements: BTreeSet<GroupElement> = BTreeSet::new();
        elements.insert(self.zero_element());
        let mut frontier: Vec<GroupElement> = vec![self.zero_element()];
        while let Some(e) = frontier.pop() {
            for g in gens {
                let next = self.add(&e, g);
                if elements.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        Ok(Subgroup {
            generators: gens.to_vec(),
            elements,
        })
    }

    /// The whole group as a subgroup.
    pub fn full_subgroup(&self) -> Result<Subgroup, QFormError> {
        let elements: BTreeSet<GroupElement> = self.all_elements()?.into_iter().collect();
        let generators = (0..self.rank())
            .map(|i| {
                let mut c = vec![0i64; self.rank()];
                c[i] = 1;
                self.element(&c).expect("rank-length vector")
            })
            .collect();
        Ok(Subgroup {
            generators,
            elements,
        })
    }

    /// Both q and b vanish identically on the subgroup.
    pub fn is_isotropic(&self, sub: &Subgroup) -> bool {
        for x in sub.elements() {
            if !self.q_value(x).is_zero() {
                return false;
            }
            for y in sub.elements() {
                if !self.b_value(x, y).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// `K_perp = { x : b(x, k) = 0 for all k in K }`, by enumeration.
    pub fn orthogonal_complement(&self, sub: &Subgroup) -> Result<Subgroup, QFormError> {
        let mut elements = BTreeSet::new();
        for x in self.all_elements()? {
            if sub
                .generators()
                .iter()
                .all(|k| self.b_value(&x, k).is_zero())
            {
                elements.insert(x);
            }
        }
        let generators = elements.iter().cloned().collect();
        Ok(Subgroup {
            generators,
            elements,
        })
    }

    /// The induced form on `K_perp / K` for isotropic `K`.
    ///
    /// The quotient group is rebuilt as a direct sum of cyclic groups
    /// (largest order first, then reversed to the ascending invariant-factor
    /// convention) and the form values are read off on coset
    /// representatives; well-definedness — constant q on every coset — is
    /// verified rather than assumed.
    pub fn orthogonal_complement_quotient(
        &self,
        sub: &Subgroup,
    ) -> Result<FiniteQuadraticForm, QFormError> {
        if !self.is_isotropic(sub) {
            return Err(QFormError::NotIsotropic);
        }
        let perp = self.orthogonal_complement(sub)?;

        // Well-definedness of q and b on cosets of `sub` inside `perp`.
        for x in perp.elements() {
            let qx = self.q_value(x);
            for k in sub.elements() {
                let shifted = self.add(x, k);
                if self.q_value(&shifted) != qx {
                    return Err(QFormError::NotIsotropic);
                }
            }
        }

        let kernel: BTreeSet<GroupElement> = sub.elements.clone();
        let mut decomposition = self.decompose_quotient(&perp, &kernel);
        decomposition.reverse(); // ascending invariant factors
        let orders: Vec<u32> = decomposition.iter().map(|(_, d)| *d as u32).collect();
        let reps: Vec<GroupElement> =
            decomposition.into_iter().map(|(g, _)| g).collect();
        let gram: Vec<Vec<Rat>> = reps
            .iter()
            .map(|a| reps.iter().map(|b| self.b_value(a, b)).collect())
            .collect();
        let q: Vec<Rat> = reps.iter().map(|a| self.q_value(a)).collect();
        FiniteQuadraticForm::new(orders, gram, q)
    }

    /// Canonical representative of `x + kernel`: the smallest coset member.
    fn canon(&self, x: &GroupElement, kernel: &BTreeSet<GroupElement>) -> GroupElement {
        kernel
            .iter()
            .map(|k| self.add(x, k))
            .min()
            .expect("kernel contains zero")
    }

    /// Order of `x` in the quotient by `kernel`.
    fn coset_order(&self, x: &GroupElement, kernel: &BTreeSet<GroupElement>) -> u64 {
        let mut acc = x.clone();
        let mut k = 1u64;
        while !kernel.contains(&acc) {
            acc = self.add(&acc, x);
            k += 1;
        }
        k
    }

    /// Greedy cyclic decomposition of `ambient/kernel`: split off a coset of
    /// maximal order (a direct summand, by the classification of finite
    /// abelian groups), recurse, and lift the recursive generators so their
    /// quotient orders are exact.  Returns (representative, order) pairs,
    /// largest order first.
    fn decompose_quotient(
        &self,
        ambient: &Subgroup,
        kernel: &BTreeSet<GroupElement>,
    ) -> Vec<(GroupElement, u64)> {
        let cosets: BTreeSet<GroupElement> = ambient
            .elements()
            .map(|x| self.canon(x, kernel))
            .collect();
        if cosets.len() == 1 {
            return Vec::new();
        }
        // Smallest representative of maximal order: deterministic, and on an
        // untouched diagonal form it reproduces the original generators.
        let d = cosets
            .iter()
            .map(|x| self.coset_order(x, kernel))
            .max()
            .expect("nontrivial quotient");
        let g = cosets
            .iter()
            .find(|x| self.coset_order(x, kernel) == d)
            .expect("some coset attains the maximal order")
            .clone();

        // Extend the kernel to kernel + <g>.
        let mut bigger = kernel.clone();
        for s in 1..d {
            let sg = self.scale(s as i64, &g);
            for k in kernel {
                bigger.insert(self.add(&sg, k));
            }
        }

        let rest = self.decompose_quotient(ambient, &bigger);
        // Lift each representative h so that (order of h in Q/bigger) * h
        // lands in the *old* kernel, not merely in <g> + kernel.  Such a
        // shift by a multiple of g always exists because d is the exponent.
        let mut out = vec![(g.clone(), d)];
        for (h, m) in rest {
            let lifted = (0..d)
                .map(|s| self.add(&h, &self.scale(-(s as i64), &g)))
                .find(|cand| self.coset_order(cand, kernel) == m)
                .expect("a maximal-order summand always admits a lift");
            out.push((lifted, m));
        }
        debug_assert_eq!(
            out.iter().map(|(_, d)| d).product::<u64>(),
            cosets.len() as u64
        );
        out
    }

    /// Apply an integer matrix (rows act on coefficients) to an element.
    pub fn apply_matrix(
        &self,
        matrix: &[Vec<i64>],
        x: &GroupElement,
    ) -> Result<GroupElement, QFormError> {
        let k = self.rank();
        if matrix.len() != k || matrix.iter().any(|r| r.len() != k) {
            return Err(QFormError::BadMatrix);
        }
        let coeffs: Vec<i64> = matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&x.coeffs)
                    .map(|(&a, &c)| a * c as i64)
                    .sum()
            })
            .collect();
        self.element(&coeffs)
    }

    /// Does the matrix preserve the quadratic form (hence the bilinear one)?
    pub fn is_form_automorphism(&self, matrix: &[Vec<i64>]) -> Result<bool, QFormError> {
        for x in self.all_elements()? {
            if self.q_value(&self.apply_matrix(matrix, &x)?) != self.q_value(&x) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Eigenspaces `{ x : M x = lambda x }` for every lambda that has one,
    /// over a homogeneous group `(Z/n)^k`.  The matrix must be invertible
    /// (trivial kernel).
    pub fn eigenspace_decomposition(
        &self,
        matrix: &[Vec<i64>],
    ) -> Result<BTreeMap<u32, Subgroup>, QFormError> {
        let n = match self.orders.first() {
            None => return Ok(BTreeMap::new()),
            Some(&n) => n,
        };
        if self.orders.iter().any(|&m| m != n) {
            return Err(QFormError::NotHomogeneous(self.orders.clone()));
        }
        let elements = self.all_elements()?;
        let kernel_size = elements
            .iter()
            .filter(|x| {
                self.apply_matrix(matrix, x)
                    .map(|y| y.is_zero())
                    .unwrap_or(false)
            })
            .count();
        if matrix.len() != self.rank() {
            return Err(QFormError::BadMatrix);
        }
        if kernel_size != 1 {
            return Err(QFormError::NotInvertible(n));
        }
        let mut spaces: BTreeMap<u32, BTreeSet<GroupElement>> = BTreeMap::new();
        for lambda in 0..n {
            let mut members = BTreeSet::new();
            for x in &elements {
                if self.apply_matrix(matrix, x)? == self.scale(lambda as i64, x) {
                    members.insert(x.clone());
                }
            }
            if members.len() > 1 {
                spaces.insert(lambda, members);
            }
        }
        Ok(spaces
            .into_iter()
            .map(|(l, elements)| {
                let generators = elements.iter().cloned().collect();
                (
                    l,
                    Subgroup {
                        generators,
                        elements,
                    },
                )
            })
            .collect())
    }
}

/// Check `q(x+y) - q(x) - q(y) = 2 b(x,y)` in Q/2Z over all element pairs.
pub fn polarization_holds(form: &FiniteQuadraticForm) -> Result<bool, QFormError> {
    let elements = form.all_elements()?;
    for x in &elements {
        for y in &elements {
            let lhs = form.q_value(&form.add(x, y)) - form.q_value(x) - form.q_value(y);
            let rhs = form.b_value(x, y) * rat_int(2);
            if !reduce_mod(&(lhs - rhs), 2).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The discriminant form of three A6 singularities: (Z/7)^3.
    fn triple_a6() -> FiniteQuadraticForm {
        let a6 = FiniteQuadraticForm::discr_an(6);
        FiniteQuadraticForm::direct_sum(&[a6.clone(), a6.clone(), a6])
    }

    fn gamma0(f: &FiniteQuadraticForm) -> GroupElement {
        f.element(&[4, 2, 1]).unwrap()
    }

    #[test]
    fn an_form_values() {
        let a1 = FiniteQuadraticForm::discr_an(1);
        assert_eq!(a1.orders(), &[2]);
        let g = a1.element(&[1]).unwrap();
        assert_eq!(a1.q_value(&g), rat(3, 2)); // -1/2 mod 2
        let a6 = FiniteQuadraticForm::discr_an(6);
        let g = a6.element(&[1]).unwrap();
        assert_eq!(a6.q_value(&g), rat(8, 7)); // -6/7 mod 2
        assert_eq!(a6.b_value(&g, &g), rat(1, 7)); // -6/7 mod 1
        // q(k*g) = k^2 q(g).
        let g4 = a6.scale(4, &g);
        assert_eq!(a6.q_value(&g4), reduce_mod(&(rat(8, 7) * rat_int(16)), 2));
    }

    #[test]
    fn construction_validation() {
        // Non-symmetric Gram.
        assert!(matches!(
            FiniteQuadraticForm::new(
                vec![2, 2],
                vec![vec![rat(1, 2), rat(1, 2)], vec![rat_int(0), rat(1, 2)]],
                vec![rat(1, 2), rat(1, 2)],
            ),
            Err(QFormError::BadGram)
        ));
        // Denominator not allowed by the order.
        assert!(matches!(
            FiniteQuadraticForm::new(vec![2], vec![vec![rat(1, 3)]], vec![rat(1, 3)]),
            Err(QFormError::BadDenominator(_))
        ));
        // Diagonal incompatibility: q != b mod 1.
        assert!(matches!(
            FiniteQuadraticForm::new(vec![2], vec![vec![rat(1, 2)]], vec![rat_int(1)]),
            Err(QFormError::IncompatibleDiagonal(0))
        ));
    }

    #[test]
    fn direct_sum_shapes() {
        let f = triple_a6();
        assert_eq!(f.orders(), &[7, 7, 7]);
        assert_eq!(f.order(), 343);
        let a1a1 = FiniteQuadraticForm::direct_sum(&[
            FiniteQuadraticForm::discr_an(1),
            FiniteQuadraticForm::discr_an(1),
        ]);
        assert_eq!(a1a1.order(), 4);
        let e = a1a1.element(&[1, 1]).unwrap();
        // q(e) = -1/2 + -1/2 = -1 mod 2 = 1.
        assert_eq!(a1a1.q_value(&e), rat_int(1));
        assert!(FiniteQuadraticForm::direct_sum(&[]).order() == 1);
    }

    #[test]
    fn gamma_kernel_is_isotropic_of_order_seven() {
        let f = triple_a6();
        let g0 = gamma0(&f);
        assert!(f.q_value(&g0).is_zero());
        let k = f.subgroup(std::slice::from_ref(&g0)).unwrap();
        assert_eq!(k.order(), 7);
        assert!(f.is_isotropic(&k));
        // A single dual generator is not isotropic.
        let e01 = f.element(&[1, 0, 0]).unwrap();
        let bad = f.subgroup(&[e01]).unwrap();
        assert!(!f.is_isotropic(&bad));
        // The trivial subgroup is.
        let trivial = f.subgroup(&[]).unwrap();
        assert!(f.is_isotropic(&trivial));
    }

    #[test]
    fn complement_and_quotient_orders() {
        let f = triple_a6();
        let k = f.subgroup(&[gamma0(&f)]).unwrap();
        let perp = f.orthogonal_complement(&k).unwrap();
        assert_eq!(perp.order(), 49);
        assert_eq!(k.order() * perp.order(), f.order()); // duality
        let quotient = f.orthogonal_complement_quotient(&k).unwrap();
        assert_eq!(quotient.order(), 7);
        assert!(polarization_holds(&quotient).unwrap());
    }

    #[test]
    fn quotient_by_trivial_subgroup_is_the_form_itself() {
        let f = triple_a6();
        let trivial = f.subgroup(&[]).unwrap();
        let q = f.orthogonal_complement_quotient(&trivial).unwrap();
        assert_eq!(q.order(), f.order());
        assert_eq!(q, f);
    }

    #[test]
    fn hyperbolic_radical_gives_trivial_quotient() {
        // Z/2 x Z/2 with q = 0 on each generator and b(g1,g2) = 1/2: the
        // whole bilinear radical is {0, g1+g2}? q(g1+g2) = 0+0+2*(1/2) = 1.
        // Take K = <g1>: isotropic; K_perp = {0, g1}; quotient trivial.
        let form = FiniteQuadraticForm::new(
            vec![2, 2],
            vec![
                vec![rat_int(0), rat(1, 2)],
                vec![rat(1, 2), rat_int(0)],
            ],
            vec![rat_int(0), rat_int(0)],
        )
        .unwrap();
        let g1 = form.element(&[1, 0]).unwrap();
        let k = form.subgroup(&[g1]).unwrap();
        assert!(form.is_isotropic(&k));
        let q = form.orthogonal_complement_quotient(&k).unwrap();
        assert_eq!(q.order(), 1);
        assert_eq!(q.rank(), 0);
    }

    #[test]
    fn nonisotropic_subgroup_is_rejected() {
        let f = triple_a6();
        let e = f.element(&[1, 0, 0]).unwrap();
        let sub = f.subgroup(&[e]).unwrap();
        assert!(matches!(
            f.orthogonal_complement_quotient(&sub),
            Err(QFormError::NotIsotropic)
        ));
    }

    #[test]
    fn cyclic_shift_eigenspaces() {
        let f = triple_a6();
        // (x0, x1, x2) -> (x2, x0, x1).
        let shift = vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]];
        assert!(f.is_form_automorphism(&shift).unwrap());
        let spaces = f.eigenspace_decomposition(&shift).unwrap();
        let eigenvalues: Vec<u32> = spaces.keys().copied().collect();
        assert_eq!(eigenvalues, vec![1, 2, 4]);
        for sub in spaces.values() {
            assert_eq!(sub.order(), 7);
        }
        // gamma0 is an eigenvector for lambda = 2, so K = V2.
        let g0 = gamma0(&f);
        assert_eq!(
            f.apply_matrix(&shift, &g0).unwrap(),
            f.scale(2, &g0)
        );
        assert!(spaces[&2].contains(&g0));
        let k = f.subgroup(std::slice::from_ref(&g0)).unwrap();
        assert_eq!(spaces[&2].elements, k.elements);
        // gamma1 and gamma2, built independently, are 2*gamma0 and 4*gamma0.
        let g1 = f.element(&[1, 4, 2]).unwrap(); // e*_{11}+e*_{24}+e*_{02}
        let g2 = f.element(&[2, 1, 4]).unwrap();
        assert_eq!(g1, f.scale(2, &g0));
        assert_eq!(g2, f.scale(4, &g0));
        // The shift maps K into itself.
        for x in k.elements() {
            assert!(k.contains(&f.apply_matrix(&shift, x).unwrap()));
        }
    }

    #[test]
    fn identity_matrix_has_single_full_eigenspace() {
        let f = triple_a6();
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let spaces = f.eigenspace_decomposition(&id).unwrap();
        assert_eq!(spaces.len(), 1);
        assert_eq!(spaces[&1].order(), 343);
        // A nilpotent (non-invertible) matrix errors.
        let nil = vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]];
        assert!(matches!(
            f.eigenspace_decomposition(&nil),
            Err(QFormError::NotInvertible(7))
        ));
    }

    #[test]
    fn polarization_exhaustive() {
        assert!(polarization_holds(&triple_a6()).unwrap());
        assert!(polarization_holds(&FiniteQuadraticForm::discr_an(1)).unwrap());
        let a2a3 = FiniteQuadraticForm::direct_sum(&[
            FiniteQuadraticForm::discr_an(2),
            FiniteQuadraticForm::discr_an(3),
        ]);
        assert!(polarization_holds(&a2a3).unwrap());
    }
}
