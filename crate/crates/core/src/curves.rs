//! The one-parameter family of plane sextics with cyclic symmetry, the
//! covering ansatz that reconstructs it, and the coordinate changes between
//! its models.
//!
//! The family `C(t)` lives in homogeneous coordinates `z0, z1, z2` and is
//! invariant under the cyclic shift `z0 -> z1 -> z2 -> z0`.  It arises from a
//! four-parameter ansatz in pullback coordinates `u0, u1, u2`: requiring the
//! ansatz to be singular along the parametrised point `(1 : t : t^2)` yields
//! a linear system whose solution set, for generic `t`, splits into the two
//! rays `b = 2a` and `b = -2a`.  The first ray is a perfect square of a cubic
//! (a degenerate branch); the second, pushed through a Vandermonde change and
//! the triangular quadratic map, reproduces `(t^3-1)^3 * C(t)` exactly.

use std::collections::BTreeMap;

use crate::exact::{rat, Eisenstein, Field, MultiPoly, PolyError, Rat};

/// Homogeneous coordinates of the sextic family.
pub const Z_VARS: [&str; 3] = ["z0", "z1", "z2"];
/// Pullback coordinates of the covering ansatz.
pub const U_VARS: [&str; 3] = ["u0", "u1", "u2"];
/// Intermediate coordinates of the Vandermonde change.
pub const V_VARS: [&str; 3] = ["v0", "v1", "v2"];
/// The family parameter.
pub const T_VAR: &str = "t";

const TZ_VARS: [&str; 4] = ["t", "z0", "z1", "z2"];
const TU_VARS: [&str; 4] = ["t", "u0", "u1", "u2"];
const TV_VARS: [&str; 4] = ["t", "v0", "v1", "v2"];
/// Ansatz unknowns, then pullback coordinates.
const ABCD_U_VARS: [&str; 7] = ["a", "b", "c", "d", "u0", "u1", "u2"];

/// The monomial orbit of `exps` under the cyclic coordinate shift,
/// deduplicated (the central monomial is its own orbit).
fn orbit(exps: [u32; 3]) -> Vec<[u32; 3]> {
    let [a, b, c] = exps;
    let mut all = vec![[a, b, c], [c, a, b], [b, c, a]];
    all.sort();
    all.dedup();
    all
}

/// Orbit-sum data defining the family: `(t-polynomial, z-orbit)` pairs,
/// with the t-polynomial given as `(power, coefficient)` terms.
#[allow(clippy::type_complexity)]
const FAMILY_DATA: [(&[(u32, i64)], [u32; 3]); 7] = [
    (&[(4, 2), (1, -2)], [4, 1, 1]),               // 2t(t^3-1)
    (&[(3, 1), (0, -1)], [4, 2, 0]),               // t^3-1
    (&[(5, 1), (2, -1)], [4, 0, 2]),               // t^2(t^3-1)
    (&[(4, 2), (1, 2)], [3, 3, 0]),                // 2t(t^3+1)
    (&[(5, 4), (2, 8)], [3, 2, 1]),                // 4t^2(t^3+2)
    (&[(6, 2), (3, 8), (0, 2)], [3, 1, 2]),        // 2(t^6+4t^3+1)
    (&[(7, 1), (4, 13), (1, 10)], [2, 2, 2]),      // t(t^6+13t^3+10)
];

/// The family over `[t, z0, z1, z2]`, with `t` symbolic.
pub fn family_symbolic() -> MultiPoly<Rat> {
    let mut terms = Vec::new();
    for (tpoly, gen) in FAMILY_DATA {
        for zexps in orbit(gen) {
            for &(tpow, coef) in tpoly {
                terms.push((
                    vec![tpow, zexps[0], zexps[1], zexps[2]],
                    Rat::from_int(coef),
                ));
            }
        }
    }
    MultiPoly::from_terms(&TZ_VARS, terms).expect("well-formed family terms")
}

/// The member `C(t)` over `z0, z1, z2`.
pub fn family_at<K: Field>(t: &K) -> MultiPoly<K> {
    let mut terms = Vec::new();
    let mut tpow_cache: Vec<K> = vec![K::one()];
    for (tpoly, gen) in FAMILY_DATA {
        let mut scalar = K::zero();
        for &(tpow, coef) in tpoly {
            while tpow_cache.len() <= tpow as usize {
                tpow_cache.push(tpow_cache.last().unwrap().mul(t));
            }
            scalar = scalar.add(&tpow_cache[tpow as usize].mul(&K::from_int(coef)));
        }
        for zexps in orbit(gen) {
            terms.push((zexps.to_vec(), scalar.clone()));
        }
    }
    MultiPoly::from_terms(&Z_VARS, terms).expect("well-formed family terms")
}

/// Orbit sums of the covering ansatz: coefficients `a, b, c, d` against the
/// orbits of `u0^4 u2^2`, `u0^3 u1^2 u2`, `u0^3 u1 u2^2` and the center.
const ANSATZ_ORBITS: [[u32; 3]; 4] = [[4, 0, 2], [3, 2, 1], [3, 1, 2], [2, 2, 2]];

/// The ansatz with symbolic coefficients, over `[a, b, c, d, u0, u1, u2]`.
pub fn ansatz_symbolic() -> MultiPoly<Rat> {
    let mut terms = Vec::new();
    for (k, gen) in ANSATZ_ORBITS.iter().enumerate() {
        for uexps in orbit(*gen) {
            let mut exps = vec![0u32; 7];
            exps[k] = 1;
            exps[4..].copy_from_slice(&[uexps[0], uexps[1], uexps[2]]);
            terms.push((exps, Rat::from_int(1)));
        }
    }
    MultiPoly::from_terms(&ABCD_U_VARS, terms).expect("well-formed ansatz terms")
}

/// The ansatz at concrete coefficients, over `u0, u1, u2`.
pub fn ansatz_at<K: Field>(coefs: &[K; 4]) -> MultiPoly<K> {
    let mut terms = Vec::new();
    for (k, gen) in ANSATZ_ORBITS.iter().enumerate() {
        for uexps in orbit(*gen) {
            terms.push((uexps.to_vec(), coefs[k].clone()));
        }
    }
    MultiPoly::from_terms(&U_VARS, terms).expect("well-formed ansatz terms")
}

/// The condition that the ansatz be singular along `(u0, u1, u2) = (1, t, t^2)`:
/// a 3x4 matrix over `Q[t]`, row `i` holding the coefficients of
/// `(a, b, c, d)` in the partial derivative with respect to `u_i`.
pub fn singular_condition_system() -> Result<Vec<[MultiPoly<Rat>; 4]>, PolyError> {
    let f = ansatz_symbolic();
    let abcdt = ["a", "b", "c", "d", "t"];
    let mut images: BTreeMap<String, MultiPoly<Rat>> = BTreeMap::new();
    for name in ["a", "b", "c", "d"] {
        images.insert(name.into(), MultiPoly::var(&abcdt, name));
    }
    let t = MultiPoly::<Rat>::var(&abcdt, "t");
    images.insert("u0".into(), MultiPoly::from_int(&abcdt, 1));
    images.insert("u1".into(), t.clone());
    images.insert("u2".into(), &t * &t);

    let mut rows = Vec::with_capacity(3);
    for u in U_VARS {
        let row_poly = f.partial_derivative(u)?.substitute(&images)?;
        let mut row: Vec<MultiPoly<Rat>> = Vec::with_capacity(4);
        for unknown in ["a", "b", "c", "d"] {
            let coeffs = row_poly.coeffs_in(unknown)?;
            let lin = if coeffs.len() > 1 {
                coeffs[1].clone()
            } else {
                MultiPoly::zero_owned(coeffs.first().map_or_else(
                    || vec!["t".to_string()],
                    |c| c.vars().to_vec(),
                ))
            };
            // The system is linear in the unknowns: strip the other three.
            let mut only_t = lin;
            for other in ["a", "b", "c", "d"] {
                if only_t.vars().iter().any(|v| v == other) {
                    only_t = only_t.without_var(other)?;
                }
            }
            row.push(only_t);
        }
        rows.push([
            row[0].clone(),
            row[1].clone(),
            row[2].clone(),
            row[3].clone(),
        ]);
    }
    Ok(rows)
}

/// The two solution rays of the singularity condition.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KernelRay {
    /// `b = 2a`; the ansatz degenerates to a perfect square.
    BTwiceA,
    /// `b = -2a`; the ansatz reconstructs the family.
    BMinusTwiceA,
}

/// Generators `(a, b, c, d)` of a kernel ray, as polynomials in `t`.
pub fn kernel_ray(ray: KernelRay) -> [MultiPoly<Rat>; 4] {
    let p = |text: &str| MultiPoly::<Rat>::parse(text, &["t"]).expect("ray literal");
    match ray {
        KernelRay::BTwiceA => [
            p("t^2"),
            p("2*t^2"),
            p("-2*t^4 - 4*t"),
            p("t^6 + 4*t^3 + 4"),
        ],
        KernelRay::BMinusTwiceA => [
            p("1"),
            p("-2"),
            p("-2*t^2"),
            p("t^4 + 8*t"),
        ],
    }
}

/// Does `(a, b, c, d)(t)` annihilate every row of the condition system?
pub fn ray_solves_system(ray: &[MultiPoly<Rat>; 4]) -> Result<bool, PolyError> {
    let system = singular_condition_system()?;
    for row in &system {
        let mut acc = MultiPoly::<Rat>::zero(&["t"]);
        for (coef, gen) in row.iter().zip(ray.iter()) {
            acc = acc.checked_add(&coef.checked_mul(gen)?)?;
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The 4x4 matrix: condition system plus the ray's defining constraint
/// (`-2a + b = 0` or `2a + b = 0`).
fn constrained_matrix(ray: KernelRay) -> Result<Vec<Vec<MultiPoly<Rat>>>, PolyError> {
    let system = singular_condition_system()?;
    let mut mat: Vec<Vec<MultiPoly<Rat>>> =
        system.into_iter().map(|row| row.to_vec()).collect();
    let c = |n: i64| MultiPoly::<Rat>::from_int(&["t"], n);
    let constraint = match ray {
        KernelRay::BTwiceA => vec![c(-2), c(1), c(0), c(0)],
        KernelRay::BMinusTwiceA => vec![c(2), c(1), c(0), c(0)],
    };
    mat.push(constraint);
    Ok(mat)
}

/// The constrained system is singular for every `t` (its 4x4 determinant is
/// identically zero), so the ray extends to a solution curve.
pub fn constrained_determinant_vanishes(ray: KernelRay) -> Result<bool, PolyError> {
    let det = crate::exact::resultant::det_bareiss(constrained_matrix(ray)?)?;
    Ok(det.is_zero())
}

/// ... and has rank 3 for generic `t` (some 3x3 minor is a nonzero
/// polynomial), so the solution is unique up to scale.
pub fn constrained_system_has_rank3(ray: KernelRay) -> Result<bool, PolyError> {
    let mat = constrained_matrix(ray)?;
    for skip_row in 0..4 {
        for skip_col in 0..4 {
            let minor: Vec<Vec<MultiPoly<Rat>>> = (0..4)
                .filter(|&i| i != skip_row)
                .map(|i| {
                    (0..4)
                        .filter(|&j| j != skip_col)
                        .map(|j| mat[i][j].clone())
                        .collect()
                })
                .collect();
            if !crate::exact::resultant::det_bareiss(minor)?.is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// The ansatz with a kernel ray substituted in, over `[t, u0, u1, u2]`.
pub fn ansatz_on_ray(ray: KernelRay) -> Result<MultiPoly<Rat>, PolyError> {
    let f = ansatz_symbolic();
    let gens = kernel_ray(ray);
    let mut images: BTreeMap<String, MultiPoly<Rat>> = BTreeMap::new();
    for (name, gen) in ["a", "b", "c", "d"].iter().zip(gens.iter()) {
        images.insert((*name).into(), gen.embed(&TU_VARS)?);
    }
    for u in U_VARS {
        images.insert(u.into(), MultiPoly::var(&TU_VARS, u));
    }
    f.substitute(&images)
}

/// The cubic whose square is the ansatz on the `b = 2a` ray.
pub fn square_root_cubic() -> MultiPoly<Rat> {
    MultiPoly::parse(
        "t*u0*u1^2 - 2*u0*u1*u2 - t^3*u0*u1*u2 + t*u0^2*u2 + t*u1*u2^2",
        &TU_VARS,
    )
    .expect("cubic literal")
}

/// Verify symbolically (in `t`) that the `b = 2a` ray is a perfect square.
pub fn square_factorization_holds() -> Result<bool, PolyError> {
    let f = ansatz_on_ray(KernelRay::BTwiceA)?;
    let c = square_root_cubic();
    Ok(f == c.pow(2))
}

/// Vandermonde change from pullback to intermediate coordinates:
/// `u_i` as polynomials over `[t, v0, v1, v2]` (with `t -> t`).
pub fn vandermonde_images_symbolic() -> BTreeMap<String, MultiPoly<Rat>> {
    let p = |text: &str| MultiPoly::<Rat>::parse(text, &TV_VARS).expect("image literal");
    let mut m = BTreeMap::new();
    m.insert("t".into(), p("t"));
    m.insert("u0".into(), p("v0 + t^2*v1 + t*v2"));
    m.insert("u1".into(), p("t*v0 + v1 + t^2*v2"));
    m.insert("u2".into(), p("t^2*v0 + t*v1 + v2"));
    m
}

/// Vandermonde change at a concrete parameter, over `v0, v1, v2`.
pub fn vandermonde_images_at<K: Field>(t: &K) -> BTreeMap<String, MultiPoly<K>> {
    let t2 = t.mul(t);
    let v = |i: usize| MultiPoly::<K>::var(&V_VARS, V_VARS[i]);
    let mut m = BTreeMap::new();
    m.insert(
        "u0".into(),
        &(&v(0) + &v(1).scale(&t2)) + &v(2).scale(t),
    );
    m.insert(
        "u1".into(),
        &(&v(0).scale(t) + &v(1)) + &v(2).scale(&t2),
    );
    m.insert(
        "u2".into(),
        &(&v(0).scale(&t2) + &v(1).scale(t)) + &v(2),
    );
    m
}

/// Triangular quadratic map from intermediate to homogeneous coordinates:
/// `v0 -> z1 z2`, `v1 -> z2 z0`, `v2 -> z0 z1` (with `t -> t`).
pub fn triangular_images_symbolic() -> BTreeMap<String, MultiPoly<Rat>> {
    let p = |text: &str| MultiPoly::<Rat>::parse(text, &TZ_VARS).expect("image literal");
    let mut m = BTreeMap::new();
    m.insert("t".into(), p("t"));
    m.insert("v0".into(), p("z1*z2"));
    m.insert("v1".into(), p("z2*z0"));
    m.insert("v2".into(), p("z0*z1"));
    m
}

/// Same map without the parameter, over `z0, z1, z2`.
pub fn triangular_images<K: Field>() -> BTreeMap<String, MultiPoly<K>> {
    let p = |text: &str| MultiPoly::<K>::parse(text, &Z_VARS).expect("image literal");
    let mut m = BTreeMap::new();
    m.insert("v0".into(), p("z1*z2"));
    m.insert("v1".into(), p("z2*z0"));
    m.insert("v2".into(), p("z0*z1"));
    m
}

/// Outcome of pushing the `b = -2a` ray through both coordinate changes.
#[derive(Clone, Debug)]
pub struct FamilyReconstruction {
    /// The pushforward divided by `(z0 z1 z2)^2`, over `[t, z0, z1, z2]`.
    pub quotient: MultiPoly<Rat>,
    /// The expected overall factor `(t^3 - 1)^3`, over `[t]`.
    pub scalar: MultiPoly<Rat>,
    /// `quotient == scalar * family`, symbolically in `t`.
    pub matches: bool,
}

/// Push the `b = -2a` ansatz through the Vandermonde and triangular changes;
/// the result is exactly divisible by `(z0 z1 z2)^2` and the quotient is
/// `(t^3 - 1)^3 * C(t)`, all symbolically in `t`.
pub fn reconstruct_family() -> Result<FamilyReconstruction, PolyError> {
    let f2 = ansatz_on_ray(KernelRay::BMinusTwiceA)?;
    let g2 = f2.substitute(&vandermonde_images_symbolic())?;
    let g3 = g2.substitute(&triangular_images_symbolic())?;
    let zzz_sq = MultiPoly::<Rat>::parse("z0^2*z1^2*z2^2", &TZ_VARS)?;
    let quotient = g3.exact_div(&zzz_sq)?;
    let scalar = MultiPoly::<Rat>::parse("t^3 - 1", &["t"])?.pow(3);
    let expected = scalar.embed(&TZ_VARS)?.checked_mul(&family_symbolic())?;
    Ok(FamilyReconstruction {
        matches: quotient == expected,
        quotient,
        scalar,
    })
}

/// The `t = 0` limit of the ansatz route: coefficients `(1, -2, 0, 0)` with
/// the pullback coordinates relabelled `(u0, u1, u2) -> (z0, z2, z1)`.
pub fn reducible_branch_member() -> MultiPoly<Rat> {
    let f0 = ansatz_at(&[
        Rat::from_int(1),
        Rat::from_int(-2),
        Rat::from_int(0),
        Rat::from_int(0),
    ]);
    let z = |name: &str| MultiPoly::<Rat>::var(&Z_VARS, name);
    f0.substitute_pairs(&[("u0", &z("z0")), ("u1", &z("z2")), ("u2", &z("z1"))])
        .expect("relabelling is a valid substitution")
}

/// The `t = 0` branch member equals `-C(0)`.
pub fn reducible_branch_matches() -> bool {
    let lhs = reducible_branch_member();
    let rhs = family_at(&Rat::from_int(0));
    lhs.proportionality(&rhs) == Some(Rat::from_int(-1))
}

/// Is `f` (over `z0, z1, z2`) invariant under the cyclic coordinate shift?
pub fn is_cyclic_invariant<K: Field>(f: &MultiPoly<K>) -> Result<bool, PolyError> {
    let vars: Vec<&str> = f.vars().iter().map(|s| s.as_str()).collect();
    if vars.len() != 3 {
        return Err(PolyError::NotUnivariate(f.vars().join(",")));
    }
    let v = |i: usize| MultiPoly::<K>::var(&vars, vars[i]);
    let shifted = f.substitute_pairs(&[
        (vars[0], &v(1)),
        (vars[1], &v(2)),
        (vars[2], &v(0)),
    ])?;
    Ok(shifted == *f)
}

/// Scalar `s` with `C(w t) = s * C(t)(z0, w z1, w^2 z2)`, if proportional.
/// Holds with `s = w` for every parameter value.
pub fn twist_scalar(t: &Rat) -> Option<Eisenstein> {
    let te = Eisenstein::from_rat(t.clone());
    let w = Eisenstein::omega();
    let lhs = family_at(&w.mul(&te));
    let z = |name: &str| MultiPoly::<Eisenstein>::var(&Z_VARS, name);
    let rhs = family_at(&te)
        .substitute_pairs(&[
            ("z0", &z("z0")),
            ("z1", &z("z1").scale(&w)),
            ("z2", &z("z2").scale(&w.mul(&w))),
        ])
        .expect("twist substitution");
    rhs.proportionality(&lhs)
}

/// The same identity with `t` kept symbolic.
pub fn twist_scalar_symbolic() -> Option<Eisenstein> {
    let w = Eisenstein::omega();
    let fam = family_symbolic().map_coeffs(|c| Eisenstein::from_rat(c.clone()));
    let pv = |name: &str| MultiPoly::<Eisenstein>::var(&TZ_VARS, name);
    let lhs = fam
        .substitute_pairs(&[
            ("t", &pv("t").scale(&w)),
            ("z0", &pv("z0")),
            ("z1", &pv("z1")),
            ("z2", &pv("z2")),
        ])
        .expect("twist substitution");
    let rhs = fam
        .substitute_pairs(&[
            ("t", &pv("t")),
            ("z0", &pv("z0")),
            ("z1", &pv("z1").scale(&w)),
            ("z2", &pv("z2").scale(&w.mul(&w))),
        ])
        .expect("twist substitution");
    rhs.proportionality(&lhs)
}

/// Check the twist identity at one parameter value.
pub fn check_epsilon_twist(t: &Rat) -> bool {
    twist_scalar(t) == Some(Eisenstein::omega())
}

/// The linear change taking the family member at `t = 5/6` to its affine
/// model: `z_i` as polynomials over `[X, Y, Z]`.
pub fn affine_model_images() -> BTreeMap<String, MultiPoly<Rat>> {
    let xyz = ["X", "Y", "Z"];
    let p = |text: &str| MultiPoly::<Rat>::parse(text, &xyz).expect("image literal");
    let mut m = BTreeMap::new();
    m.insert("z0".into(), p("1/3*X - 1/3*Y + 1/3*Z"));
    m.insert("z1".into(), p("-1/3*X - 5/3*Y + 2/3*Z"));
    m.insert("z2".into(), p("Y"));
    m
}

/// Dehomogenise: set `chart = 1` and rename the two remaining variables.
pub fn to_affine_chart<K: Field>(
    f: &MultiPoly<K>,
    chart: &str,
    out_vars: [&str; 2],
) -> Result<MultiPoly<K>, PolyError> {
    let affine = f.eval_var(chart, &K::one())?;
    affine.with_renamed_vars(&out_vars)
}

/// The affine sextic model `g(x, y)`: `C(5/6)` under the model change, in
/// the chart `Z = 1`.
pub fn affine_model() -> Result<MultiPoly<Rat>, PolyError> {
    let c = family_at(&rat(5, 6));
    let moved = c.substitute(&affine_model_images())?;
    to_affine_chart(&moved, "Z", ["x", "y"])
}
