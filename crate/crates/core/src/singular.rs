//! Projective singular-point census and A_k classification.
//!
//! Points are located exactly over Q(w) by chart-wise elimination: in each
//! affine chart the curve is sheared so its leading coefficient is constant,
//! the two resultants of the curve with its partials are gcd'd into a
//! candidate eliminant, and candidate coordinates are extracted as exact
//! rationals (Sturm isolation plus the simplest-rational probe) or as the
//! cube roots of unity.  Anything the coordinate extractor cannot express is
//! reported honestly as an unresolved locus rather than dropped.
//!
//! Classification at a point uses the Hessian corank and the Milnor number,
//! computed as the local intersection multiplicity of the two partial
//! derivatives.  For an isolated plane-curve singularity of corank <= 1 the
//! splitting lemma pins the type to A_mu; corank 2 is reported as `NonA`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::exact::sturm::extract_rational_roots;
use crate::exact::{gcd_multivar, resultant, Eisenstein, Field, MultiPoly, PolyError, Rat};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SingularError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("expected a homogeneous polynomial in three variables")]
    NotTernaryHomogeneous,
    #[error("curve is not reduced: repeated component {0}")]
    NotReduced(String),
    #[error("point does not lie on the curve")]
    NotOnCurve,
    #[error("local intersection multiplicity is infinite (common component through the point)")]
    InfiniteMultiplicity,
    #[error("intersection multiplicity did not stabilise under shearing")]
    Unstable,
    #[error("unresolved loci remain; the Milnor numbers of the resolved points sum to {0}")]
    UnresolvedCensus(u32),
    #[error("point has no nonzero coordinate")]
    ZeroPoint,
}

/// A point of the projective plane over Q(w), normalised so its last nonzero
/// coordinate is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ProjPoint {
    coords: [Eisenstein; 3],
}

impl ProjPoint {
    pub fn new(coords: [Eisenstein; 3]) -> Result<Self, SingularError> {
        let last = (0..3)
            .rev()
            .find(|&i| !coords[i].is_zero())
            .ok_or(SingularError::ZeroPoint)?;
        let inv = coords[last].inv().expect("nonzero coordinate");
        let normalised = [
            coords[0].mul(&inv),
            coords[1].mul(&inv),
            coords[2].mul(&inv),
        ];
        Ok(ProjPoint {
            coords: normalised,
        })
    }

    pub fn from_ints(coords: [i64; 3]) -> Self {
        ProjPoint::new(coords.map(Eisenstein::from_int)).expect("nonzero point")
    }

    pub fn coords(&self) -> &[Eisenstein; 3] {
        &self.coords
    }

    /// Index of the last nonzero (== 1) coordinate.
    fn chart(&self) -> usize {
        (0..3)
            .rev()
            .find(|&i| !self.coords[i].is_zero())
            .expect("normalised point")
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} : {} : {})",
            self.coords[0], self.coords[1], self.coords[2]
        )
    }
}

/// Local type of a curve point.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SingKind {
    Smooth,
    /// `A_k`: Milnor number `k`, Hessian corank <= 1.
    A(u32),
    /// Isolated but of corank 2 (not of type A).
    NonA,
    /// The classifier could not settle the type.
    Unresolved,
}

impl fmt::Display for SingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingKind::Smooth => write!(f, "smooth"),
            SingKind::A(k) => write!(f, "A{k}"),
            SingKind::NonA => write!(f, "non-A"),
            SingKind::Unresolved => write!(f, "unresolved"),
        }
    }
}

/// One classified point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SingularityReport {
    pub point: ProjPoint,
    pub kind: SingKind,
    pub milnor: u32,
    pub hessian_corank: u8,
}

/// A factor of an eliminant whose roots could not be expressed in Q(w).
/// Such a factor may or may not correspond to actual singular points; it is
/// surfaced so the caller can decide, never silently dropped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnresolvedLocus {
    /// Chart index the factor arose in.
    pub chart: usize,
    /// The unextracted factor, univariate in one chart coordinate.
    pub residual: MultiPoly<Eisenstein>,
}

impl UnresolvedLocus {
    /// Upper bound on how many singular points the factor could hide: its
    /// degree (the factor is squarefree, so roots are distinct).
    pub fn multiplicity_budget(&self) -> u32 {
        self.residual.total_degree().unwrap_or(0)
    }
}

/// The complete singular locus of a reduced plane curve.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SingularCensus {
    pub points: Vec<SingularityReport>,
    pub unresolved: Vec<UnresolvedLocus>,
}

impl SingularCensus {
    /// Total Milnor number of the classified points.
    pub fn milnor_total(&self) -> u32 {
        self.points.iter().map(|p| p.milnor).sum()
    }
}

fn promote(f: &MultiPoly<Rat>) -> MultiPoly<Eisenstein> {
    f.map_coeffs(|c| Eisenstein::from_rat(c.clone()))
}

/// Census of a rational curve; coordinates may still live in Q(w).
pub fn find_singular_points(f: &MultiPoly<Rat>) -> Result<SingularCensus, SingularError> {
    find_singular_points_eisenstein(&promote(f))
}

/// Census over Q(w).
pub fn find_singular_points_eisenstein(
    f: &MultiPoly<Eisenstein>,
) -> Result<SingularCensus, SingularError> {
    check_ternary_input(f)?;
    let vars: Vec<String> = f.vars().to_vec();
    let mut seen: BTreeSet<ProjPoint> = BTreeSet::new();
    let mut unresolved = Vec::new();
    for chart in 0..3 {
        let (pts, residuals) = chart_singular_points(f, &vars, chart)?;
        for p in pts {
            seen.insert(p);
        }
        for r in residuals {
            unresolved.push(UnresolvedLocus { chart, residual: r });
        }
    }
    let mut points = Vec::new();
    for p in seen {
        points.push(classify_ak_eisenstein(f, &p)?);
    }
    Ok(SingularCensus { points, unresolved })
}

/// Sum of Milnor numbers over the whole singular locus; if any locus stayed
/// unresolved the error carries the sum over the resolved points (a lower
/// bound for the true total).
pub fn milnor_sum(f: &MultiPoly<Rat>) -> Result<u32, SingularError> {
    let census = find_singular_points(f)?;
    let resolved = census
        .points
        .iter()
        .all(|p| !matches!(p.kind, SingKind::Unresolved));
    if !census.unresolved.is_empty() || !resolved {
        return Err(SingularError::UnresolvedCensus(census.milnor_total()));
    }
    Ok(census.milnor_total())
}

fn check_ternary_input(f: &MultiPoly<Eisenstein>) -> Result<(), SingularError> {
    if f.vars().len() != 3 || f.is_zero() || f.homogeneous_degree().is_none() {
        return Err(SingularError::NotTernaryHomogeneous);
    }
    // A repeated coordinate-line factor is cheap to detect up front.  Other
    // repeated components are caught during elimination: they divide the
    // curve and both partials, so after the shear every pairwise resultant
    // vanishes and the chart reports `EliminationFailed`.
    for i in 0..3 {
        let mult = f.terms().map(|(m, _)| m.exps()[i]).min().unwrap_or(0);
        if mult >= 2 {
            return Err(SingularError::NotReduced(format!(
                "{}^{mult}",
                f.vars()[i]
            )));
        }
    }
    Ok(())
}

/// Singular points of `f` visible in one affine chart, plus unresolved
/// eliminant factors.
fn chart_singular_points(
    f: &MultiPoly<Eisenstein>,
    vars: &[String],
    chart: usize,
) -> Result<(Vec<ProjPoint>, Vec<MultiPoly<Eisenstein>>), SingularError> {
    let affine = f.eval_var(&vars[chart], &Eisenstein::one())?;
    let pq: Vec<String> = affine.vars().to_vec();
    let (p, q) = (pq[0].as_str(), pq[1].as_str());

    // Shear p -> p + shear*q until the q-degree equals the total degree with
    // a constant leading coefficient, so resultants with the curve have no
    // degree-drop artifacts.
    let degree = affine.total_degree().expect("chart of a nonzero curve") as usize;
    let mut sheared = affine.clone();
    let mut shear: i64 = 0;
    loop {
        let coeffs = sheared.coeffs_in(q)?;
        if coeffs.len() == degree + 1 && coeffs[degree].is_constant() {
            break;
        }
        shear += 1;
        assert!(shear <= degree as i64 + 1, "shear search must terminate");
        let pv = MultiPoly::<Eisenstein>::var(&[p, q], p);
        let qv = MultiPoly::<Eisenstein>::var(&[p, q], q);
        let image = &pv + &qv.scale(&Eisenstein::from_int(shear));
        sheared = affine.substitute_pairs(&[(p, &image), (q, &qv)])?;
    }
    // Scaling to coprime integer coefficients keeps the resultant and gcd
    // arithmetic below in small integers; the locus is scale-invariant.
    let sheared = sheared.scalar_primitive();

    let fp = sheared.partial_derivative(p)?;
    let fq = sheared.partial_derivative(q)?;
    if fp.is_zero() && fq.is_zero() {
        return Ok((Vec::new(), Vec::new())); // constant chart: nothing here
    }

    // Candidate eliminant in p: gcd of the pairwise resultants that carry
    // information.  A zero resultant signals a factor shared with a partial
    // derivative; after the shear no factor is free of q, so a vanishing
    // Res_q(f, f_q) happens exactly when the curve has a repeated component.
    let pairs = [(&sheared, &fp), (&sheared, &fq), (&fp, &fq)];
    let mut eliminant: Option<MultiPoly<Eisenstein>> = None;
    for (a, b) in pairs {
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let r = match resultant(a, b, q) {
            Ok(r) => r,
            Err(PolyError::DegenerateResultant(_)) => continue,
            Err(e) => return Err(e.into()),
        };
        if r.is_zero() {
            continue;
        }
        eliminant = Some(match eliminant {
            None => r,
            Some(e) => gcd_multivar(&e, &r)?,
        });
    }
    let eliminant = eliminant.ok_or_else(|| {
        SingularError::NotReduced(format!("visible in chart {chart}"))
    })?;

    let mut points = Vec::new();
    let mut residuals = Vec::new();
    if eliminant.is_constant() {
        return Ok((points, residuals));
    }
    let (p_roots, p_residual) = eisenstein_roots(&eliminant)?;
    if !p_residual.is_constant() {
        residuals.push(p_residual);
    }
    for p0 in p_roots {
        // q-coordinates: common roots of the three specialised polynomials.
        let at = |poly: &MultiPoly<Eisenstein>| poly.eval_var(p, &p0);
        let (s0, s1, s2) = (at(&sheared)?, at(&fp)?, at(&fq)?);
        if s0.is_zero() && s1.is_zero() && s2.is_zero() {
            // A whole fibre is singular: a repeated component slipped past
            // the cheap up-front check.
            return Err(SingularError::NotReduced(format!("over {p} = {p0}")));
        }
        let mut d = gcd_multivar(&s0, &s1)?;
        d = gcd_multivar(&d, &s2)?;
        if d.is_constant() {
            continue; // spurious candidate from the elimination
        }
        let (q_roots, q_residual) = eisenstein_roots(&d)?;
        if !q_residual.is_constant() {
            residuals.push(q_residual);
        }
        for q0 in q_roots {
            // Undo the shear and lift to projective coordinates.
            let orig_p = p0.add(&q0.mul(&Eisenstein::from_int(shear)));
            let mut coords = [
                Eisenstein::zero(),
                Eisenstein::zero(),
                Eisenstein::zero(),
            ];
            coords[chart] = Eisenstein::one();
            let mut it = (0..3).filter(|&i| i != chart);
            let i1 = it.next().unwrap();
            let i2 = it.next().unwrap();
            coords[i1] = orig_p.clone();
            coords[i2] = q0.clone();
            points.push(ProjPoint::new(coords)?);
        }
    }
    Ok((points, residuals))
}

/// Classify one projective point on a rational curve as smooth, A_k, or
/// beyond type A.
pub fn classify_ak(
    f: &MultiPoly<Rat>,
    point: &ProjPoint,
) -> Result<SingularityReport, SingularError> {
    classify_ak_eisenstein(&promote(f), point)
}

/// Classify one projective point on a curve over Q(w).
pub fn classify_ak_eisenstein(
    f: &MultiPoly<Eisenstein>,
    point: &ProjPoint,
) -> Result<SingularityReport, SingularError> {
    check_ternary_input(f)?;
    let vars: Vec<String> = f.vars().to_vec();
    let chart = point.chart();
    let affine = f.eval_var(&vars[chart], &Eisenstein::one())?;
    let mut it = (0..3).filter(|&i| i != chart);
    let (i1, i2) = (it.next().unwrap(), it.next().unwrap());
    let local = translate_to_origin(
        &affine,
        &[point.coords[i1].clone(), point.coords[i2].clone()],
    )?;
    let (kind, milnor, hessian_corank) = classify_local(&local)?;
    Ok(SingularityReport {
        point: point.clone(),
        kind,
        milnor,
        hessian_corank,
    })
}

fn translate_to_origin<K: Field>(
    f: &MultiPoly<K>,
    at: &[K; 2],
) -> Result<MultiPoly<K>, PolyError> {
    let vars: Vec<&str> = f.vars().iter().map(|s| s.as_str()).collect();
    let x = MultiPoly::<K>::var(&vars, vars[0]);
    let y = MultiPoly::<K>::var(&vars, vars[1]);
    let cx = MultiPoly::<K>::constant(&vars, at[0].clone());
    let cy = MultiPoly::<K>::constant(&vars, at[1].clone());
    f.substitute_pairs(&[(vars[0], &(&x + &cx)), (vars[1], &(&y + &cy))])
}

/// Classification of a bivariate germ at the origin.
fn classify_local(
    local: &MultiPoly<Eisenstein>,
) -> Result<(SingKind, u32, u8), SingularError> {
    let vars: Vec<&str> = local.vars().iter().map(|s| s.as_str()).collect();
    if !local.coeff(&[0, 0]).is_zero() {
        return Err(SingularError::NotOnCurve);
    }
    let fx = local.partial_derivative(vars[0])?;
    let fy = local.partial_derivative(vars[1])?;
    if !fx.coeff(&[0, 0]).is_zero() || !fy.coeff(&[0, 0]).is_zero() {
        return Ok((SingKind::Smooth, 0, 0));
    }
    // Hessian corank at the origin.
    let hxx = local.coeff(&[2, 0]).mul(&Eisenstein::from_int(2));
    let hxy = local.coeff(&[1, 1]);
    let hyy = local.coeff(&[0, 2]).mul(&Eisenstein::from_int(2));
    let det = hxx.mul(&hyy).sub(&hxy.mul(&hxy));
    let corank: u8 = if !det.is_zero() {
        0
    } else if !hxx.is_zero() || !hxy.is_zero() || !hyy.is_zero() {
        1
    } else {
        2
    };
    let origin = [Eisenstein::zero(), Eisenstein::zero()];
    let milnor = match local_intersection_multiplicity(&fx, &fy, &origin) {
        Ok(m) => m,
        // The shear sequence is bounded; in the (never yet observed) case it
        // exhausts without stabilising, report the point rather than guess.
        Err(SingularError::Unstable) => {
            return Ok((SingKind::Unresolved, 0, corank));
        }
        Err(e) => return Err(e),
    };
    let kind = match corank {
        0 => {
            debug_assert_eq!(milnor, 1);
            SingKind::A(1)
        }
        1 => SingKind::A(milnor),
        _ => SingKind::NonA,
    };
    Ok((kind, milnor, corank))
}

/// Local intersection multiplicity `I_p(f, g)` of two bivariate curves.
///
/// After translating `p` to the origin and removing any common factor (a
/// common factor *through the origin* makes the multiplicity infinite), the
/// pair is sheared `x -> x + k*y` and the order of vanishing at `x = 0` of
/// `Res_y` is taken; the order is an upper bound that is exact for almost
/// every `k`, so the first value attained by two consecutive shears is the
/// multiplicity.
pub fn local_intersection_multiplicity<K: Field>(
    f: &MultiPoly<K>,
    g: &MultiPoly<K>,
    point: &[K; 2],
) -> Result<u32, SingularError> {
    if f.vars().len() != 2 || f.vars() != g.vars() {
        return Err(SingularError::Poly(PolyError::VariableMismatch(
            f.vars().join(","),
            g.vars().join(","),
        )));
    }
    let mut fl = translate_to_origin(f, point)?.scalar_primitive();
    let mut gl = translate_to_origin(g, point)?.scalar_primitive();
    if fl.is_zero() || gl.is_zero() {
        return Err(SingularError::InfiniteMultiplicity);
    }
    let common = gcd_multivar(&fl, &gl)?;
    if !common.is_constant() {
        if common.coeff(&[0, 0]).is_zero() {
            return Err(SingularError::InfiniteMultiplicity);
        }
        fl = fl.exact_div(&common)?;
        gl = gl.exact_div(&common)?;
    }
    let vars: Vec<&str> = fl.vars().iter().map(|s| s.as_str()).collect();
    let (x, y) = (vars[0], vars[1]);
    let xv = MultiPoly::<K>::var(&vars, x);
    let yv = MultiPoly::<K>::var(&vars, y);
    let mut prev: Option<u32> = None;
    for k in 0..24i64 {
        let image = &xv + &yv.scale(&K::from_int(k));
        let fk = fl.substitute_pairs(&[(x, &image), (y, &yv)])?;
        let gk = gl.substitute_pairs(&[(x, &image), (y, &yv)])?;
        let r = match resultant(&fk, &gk, y) {
            Ok(r) => r,
            Err(PolyError::DegenerateResultant(_)) => continue,
            Err(e) => return Err(e.into()),
        };
        if r.is_zero() {
            continue;
        }
        let ord = r
            .terms()
            .map(|(m, _)| m.exps()[0])
            .min()
            .expect("nonzero resultant");
        if prev == Some(ord) {
            return Ok(ord);
        }
        prev = Some(ord);
    }
    Err(SingularError::Unstable)
}

// ---- root extraction over Q(w) -------------------------------------------

/// Distinct roots of a univariate polynomial over Q(w) that are expressible
/// as rationals or as `w`, `w^2`, plus the unextracted squarefree residual.
fn eisenstein_roots(
    poly: &MultiPoly<Eisenstein>,
) -> Result<(Vec<Eisenstein>, MultiPoly<Eisenstein>), SingularError> {
    debug_assert_eq!(poly.vars().len(), 1);
    let var = poly.vars()[0].clone();
    let mut sf = crate::exact::squarefree_part(poly)?;
    let mut roots = Vec::new();

    // Rational roots: a rational r is a root iff it annihilates both the
    // rational and the w-components, i.e. is a root of their gcd over Q.
    let re_part = sf.map_coeffs(|c| c.re().clone());
    let om_part = sf.map_coeffs(|c| c.om().clone());
    let rat_gcd = if om_part.is_zero() {
        re_part
    } else {
        gcd_multivar(&re_part, &om_part)?
    };
    if !rat_gcd.is_constant() {
        let (rational_roots, _) = extract_rational_roots(&rat_gcd)?;
        for (r, _mult) in rational_roots {
            let root = Eisenstein::from_rat(r);
            if eval_to_scalar(&sf, &var, &root).is_zero() {
                roots.push(root);
            }
        }
    }

    // Roots at the cube roots of unity.
    for cand in [Eisenstein::omega(), Eisenstein::omega_sq()] {
        if eval_to_scalar(&sf, &var, &cand).is_zero() && !roots.contains(&cand) {
            roots.push(cand);
        }
    }

    // Divide the found roots out of the squarefree part.
    for r in &roots {
        let vref: Vec<&str> = sf.vars().iter().map(|s| s.as_str()).collect();
        let linear = &MultiPoly::<Eisenstein>::var(&vref, &var)
            - &MultiPoly::<Eisenstein>::constant(&vref, r.clone());
        sf = sf.exact_div(&linear)?;
    }
    Ok((roots, sf))
}

fn eval_to_scalar(p: &MultiPoly<Eisenstein>, var: &str, x: &Eisenstein) -> Eisenstein {
    p.eval_var(var, x)
        .expect("variable exists")
        .as_constant()
        .expect("univariate evaluation yields a constant")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves;
    use crate::exact::{rat, rat_int};

    fn rp(text: &str, vars: &[&str]) -> MultiPoly<Rat> {
        MultiPoly::parse(text, vars).unwrap()
    }

    #[test]
    fn projective_point_normalisation() {
        let p = ProjPoint::from_ints([2, 4, 2]);
        assert_eq!(
            p.coords(),
            &[
                Eisenstein::from_int(1),
                Eisenstein::from_int(2),
                Eisenstein::from_int(1)
            ]
        );
        assert_eq!(ProjPoint::from_ints([3, 0, 0]).to_string(), "(1 : 0 : 0)");
        assert!(ProjPoint::new([
            Eisenstein::zero(),
            Eisenstein::zero(),
            Eisenstein::zero()
        ])
        .is_err());
    }

    #[test]
    fn nodal_cubic_has_one_node() {
        // z2 z0^2 = z1^2 (z1 + z2): node at (0 : 0 : 1).
        let f = rp("z0^2*z2 - z1^3 - z1^2*z2", &["z0", "z1", "z2"]);
        let census = find_singular_points(&f).unwrap();
        assert!(census.unresolved.is_empty());
        assert_eq!(census.points.len(), 1);
        let p = &census.points[0];
        assert_eq!(p.point, ProjPoint::from_ints([0, 0, 1]));
        assert_eq!(p.kind, SingKind::A(1));
        assert_eq!(p.milnor, 1);
        assert_eq!(p.hessian_corank, 0);
    }

    #[test]
    fn cusp_is_a2() {
        // z2 z0^2 = z1^3: cusp at (0 : 0 : 1).
        let f = rp("z0^2*z2 - z1^3", &["z0", "z1", "z2"]);
        let census = find_singular_points(&f).unwrap();
        assert_eq!(census.points.len(), 1);
        assert_eq!(census.points[0].kind, SingKind::A(2));
        assert_eq!(census.points[0].hessian_corank, 1);
    }

    #[test]
    fn smooth_conic_is_smooth() {
        let f = rp("z0^2 + z1^2 - z2^2", &["z0", "z1", "z2"]);
        let census = find_singular_points(&f).unwrap();
        assert!(census.points.is_empty());
        assert!(census.unresolved.is_empty());
        // classify at a smooth point
        let rep = classify_ak(&f, &ProjPoint::from_ints([1, 0, 1])).unwrap();
        assert_eq!(rep.kind, SingKind::Smooth);
        assert_eq!(rep.milnor, 0);
    }

    #[test]
    fn non_reduced_input_is_rejected() {
        let f = rp("z0^2*z1^2", &["z0", "z1", "z2"]);
        assert!(matches!(
            find_singular_points(&f),
            Err(SingularError::NotReduced(_))
        ));
    }

    #[test]
    fn tacnode_multiplicity() {
        // I_0(y - x^2, y + x^2) = 2.
        let f = rp("y - x^2", &["x", "y"]);
        let g = rp("y + x^2", &["x", "y"]);
        let origin = [rat_int(0), rat_int(0)];
        assert_eq!(
            local_intersection_multiplicity(&f, &g, &origin).unwrap(),
            2
        );
        // Transverse lines meet once; disjoint at this point -> 0.
        let l1 = rp("x", &["x", "y"]);
        let l2 = rp("y", &["x", "y"]);
        assert_eq!(
            local_intersection_multiplicity(&l1, &l2, &origin).unwrap(),
            1
        );
        let away = rp("x - 1", &["x", "y"]);
        assert_eq!(
            local_intersection_multiplicity(&l1, &away, &origin).unwrap(),
            0
        );
        // Common component through the point is infinite.
        let fxy = rp("x*y", &["x", "y"]);
        let fxx = rp("x*y + x^2", &["x", "y"]);
        assert!(matches!(
            local_intersection_multiplicity(&fxy, &fxx, &origin),
            Err(SingularError::InfiniteMultiplicity)
        ));
    }

    #[test]
    fn higher_tangency_orders() {
        // I_0(y - x^k, y) = k.
        for k in [2u32, 3, 5, 7] {
            let f = rp(&format!("y - x^{k}"), &["x", "y"]);
            let g = rp("y", &["x", "y"]);
            assert_eq!(
                local_intersection_multiplicity(&f, &g, &[rat_int(0), rat_int(0)]).unwrap(),
                k
            );
        }
        // At a shifted base point.
        let f = rp("y - x^2 + 2*x - 1", &["x", "y"]); // y = (x-1)^2
        let g = rp("y", &["x", "y"]);
        assert_eq!(
            local_intersection_multiplicity(&f, &g, &[rat_int(1), rat_int(0)]).unwrap(),
            2
        );
    }

    #[test]
    fn family_member_census_is_three_a6() {
        let f = curves::family_at(&rat(5, 6));
        let census = find_singular_points(&f).unwrap();
        assert!(census.unresolved.is_empty(), "unresolved: {:?}", census.unresolved);
        assert_eq!(census.points.len(), 3);
        let expected: BTreeSet<ProjPoint> = [
            ProjPoint::from_ints([1, 0, 0]),
            ProjPoint::from_ints([0, 1, 0]),
            ProjPoint::from_ints([0, 0, 1]),
        ]
        .into();
        let got: BTreeSet<ProjPoint> =
            census.points.iter().map(|r| r.point.clone()).collect();
        assert_eq!(got, expected);
        for rep in &census.points {
            assert_eq!(rep.kind, SingKind::A(6));
            assert_eq!(rep.milnor, 6);
            assert_eq!(rep.hessian_corank, 1);
        }
        assert_eq!(census.milnor_total(), 18);
    }

    #[test]
    fn extra_node_at_minus_three() {
        let f = curves::family_at(&rat_int(-3));
        let census = find_singular_points(&f).unwrap();
        assert!(census.unresolved.is_empty());
        assert_eq!(census.points.len(), 4);
        let node = census
            .points
            .iter()
            .find(|r| r.point == ProjPoint::from_ints([1, 1, 1]))
            .expect("node at (1 : 1 : 1)");
        assert_eq!(node.kind, SingKind::A(1));
        assert_eq!(census.milnor_total(), 19);
    }

    #[test]
    fn normal_forms_are_recognised() {
        // y^2 - x^(k+1), homogenised, has an A_k point at the origin chart.
        for k in 1u32..=8 {
            let f = rp(&format!("y^2 - x^{}", k + 1), &["x", "y"])
                .homogenized("z")
                .unwrap();
            let rep = classify_ak(&f, &ProjPoint::from_ints([0, 0, 1])).unwrap();
            assert_eq!(rep.kind, SingKind::A(k), "k = {k}");
            assert_eq!(rep.milnor, k);
        }
    }

    #[test]
    fn second_ray_specialisation_is_a4() {
        // The ansatz with coefficients (1, -2, -8, 32) — the b = -2a ray at
        // its degree-4 specialisation — has an A4 point at (1 : 0 : 0).
        let f = curves::ansatz_at(&[rat_int(1), rat_int(-2), rat_int(-8), rat_int(32)]);
        let rep = classify_ak(&f, &ProjPoint::from_ints([1, 0, 0])).unwrap();
        assert_eq!(rep.kind, SingKind::A(4));
        assert_eq!(rep.milnor, 4);
        assert_eq!(rep.hessian_corank, 1);
    }

    #[test]
    fn degenerate_member_meets_vertex_lines_with_orders_four_and_two() {
        // The t = 0 member against the coordinate line z1 = 0 (joining
        // (0:0:1) and (1:0:0)): contact of order 4 at (1:0:0) and order 2 at
        // (0:0:1); the total is Bezout's 6 = deg(curve) * deg(line).
        let f = curves::family_at(&rat_int(0));
        let origin = [rat_int(0), rat_int(0)];

        let chart0 = f.eval_var("z0", &rat_int(1)).unwrap(); // coords (z1, z2)
        let line0 = rp("z1", &["z1", "z2"]);
        let at_p0 = local_intersection_multiplicity(&chart0, &line0, &origin).unwrap();
        assert_eq!(at_p0, 4);

        let chart2 = f.eval_var("z2", &rat_int(1)).unwrap(); // coords (z0, z1)
        let line2 = rp("z1", &["z0", "z1"]);
        let at_p2 = local_intersection_multiplicity(&chart2, &line2, &origin).unwrap();
        assert_eq!(at_p2, 2);
        assert_eq!(at_p0 + at_p2, 6);
    }

    #[test]
    fn affine_model_closure_census() {
        let g = curves::affine_model().unwrap();
        let closure = g.homogenized("z").unwrap();
        let census = find_singular_points(&closure).unwrap();
        assert!(census.unresolved.is_empty());
        let half = Eisenstein::from_rat(rat(1, 2));
        let expected: BTreeSet<ProjPoint> = [
            ProjPoint::from_ints([-1, 0, 1]),
            ProjPoint::from_ints([2, 0, 1]),
            ProjPoint::new([half.neg(), half, Eisenstein::one()]).unwrap(),
        ]
        .into();
        let got: BTreeSet<ProjPoint> =
            census.points.iter().map(|r| r.point.clone()).collect();
        assert_eq!(got, expected);
        for rep in &census.points {
            assert_eq!(rep.kind, SingKind::A(6), "at {}", rep.point);
        }
    }

    #[test]
    fn smooth_cubic_has_milnor_sum_zero() {
        let f = rp("z0^3 + z1^3 + z2^3", &["z0", "z1", "z2"]);
        assert_eq!(milnor_sum(&f).unwrap(), 0);
    }

    #[test]
    fn repeated_slanted_line_is_rejected() {
        // (z0 - z1)^2 (z0 + z1 + z2) (z0 - z2): repeated non-coordinate
        // component, invisible to the cheap monomial check.
        let vars = ["z0", "z1", "z2"];
        let doubled = rp("z0 - z1", &vars).pow(2);
        let f = &(&doubled * &rp("z0 + z1 + z2", &vars)) * &rp("z0 - z2", &vars);
        assert!(matches!(
            find_singular_points(&f),
            Err(SingularError::NotReduced(_))
        ));
    }

    #[test]
    fn eisenstein_coordinates_are_found() {
        // z2 (z0^3 - z1^3): the line z2 = 0 meets the three lines z0 = c z1
        // (c a cube root of unity) in nodes, two of which have w-coordinates;
        // the three lines are concurrent in an ordinary triple point.
        let f = rp("z0^3*z2 - z1^3*z2", &["z0", "z1", "z2"]);
        let census = find_singular_points(&f).unwrap();
        assert!(census.unresolved.is_empty());
        assert_eq!(census.points.len(), 4);
        let triple = census
            .points
            .iter()
            .find(|r| r.point == ProjPoint::from_ints([0, 0, 1]))
            .expect("triple point at (0 : 0 : 1)");
        assert_eq!(triple.kind, SingKind::NonA);
        assert_eq!(triple.milnor, 4);
        assert_eq!(triple.hessian_corank, 2);
        for cand in [
            ProjPoint::from_ints([1, 1, 0]),
            ProjPoint::new([Eisenstein::omega(), Eisenstein::one(), Eisenstein::zero()])
                .unwrap(),
            ProjPoint::new([
                Eisenstein::omega_sq(),
                Eisenstein::one(),
                Eisenstein::zero(),
            ])
            .unwrap(),
        ] {
            let node = census
                .points
                .iter()
                .find(|r| r.point == cand)
                .unwrap_or_else(|| panic!("node at {cand}"));
            assert_eq!(node.kind, SingKind::A(1));
        }
        assert_eq!(census.milnor_total(), 7);
    }
}
