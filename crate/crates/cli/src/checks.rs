//! The verification checklist: every headline computation re-run end to end.
//!
//! Each criterion is an independent function returning `Ok(())` or a message
//! saying exactly what differed. Criteria never share state, so they run in
//! parallel; output order is fixed by the checklist order.

use num_bigint::BigInt;
use num_traits::Signed;

use sextic_core::curves::{
    affine_model, check_epsilon_twist, family_at, kernel_ray, ray_solves_system,
    reconstruct_family, reducible_branch_matches, square_factorization_holds,
    twist_scalar_symbolic, KernelRay,
};
use sextic_core::exact::{
    isolate_real_roots, rat, rat_int, resultant, smith_normal_form, Eisenstein, IntMatrix,
    MultiPoly, Rat,
};
use sextic_core::fpgrp::{
    abelianization, isomorphic, named_presentation, vankampen_presentation, verify_homomorphism,
    CosetTable, HomStatus, MulTable, Presentation, DEFAULT_COSET_LIMIT,
};
use sextic_core::pencil::{pencil_discriminant, singular_fiber_census, verify_factorization};
use sextic_core::qforms::{polarization_holds, FiniteQuadraticForm};
use sextic_core::singular::{classify_ak, find_singular_points, ProjPoint, SingKind};

use crate::fixtures;

/// One entry of the checklist.
pub struct Criterion {
    pub id: &'static str,
    pub module: &'static str,
    pub description: &'static str,
    pub run: fn() -> Result<(), String>,
}

/// The result of running one entry.
pub struct Outcome {
    pub id: &'static str,
    pub module: &'static str,
    pub passed: bool,
    /// The full `PASS ...` / `FAIL ...` report line.
    pub line: String,
}

/// Results of a checklist run, in checklist order.
pub struct Report {
    pub outcomes: Vec<Outcome>,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.outcomes.iter().filter(|o| o.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.outcomes.len() - self.passed()
    }

    pub fn summary(&self) -> String {
        format!("{} passed, {} failed", self.passed(), self.failed())
    }
}

/// The checklist, in report order.
pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: "family-reconstruction",
            module: "family",
            description: "the b = -2a ansatz rebuilds the family through the Vandermonde and triangular changes",
            run: check_family_reconstruction,
        },
        Criterion {
            id: "family-t1",
            module: "family",
            description: "the member at t = 1 is 4*(z0*z1 + z1*z2 + z2*z0)^3",
            run: check_family_t1,
        },
        Criterion {
            id: "g-model",
            module: "family",
            description: "the affine model at t = 5/6 reproduces all 28 frozen coefficients exactly",
            run: check_g_model,
        },
        Criterion {
            id: "census",
            module: "census",
            description: "three A6 points (total Milnor number 18) at t in {0, 5/6, 2, -1}; an extra A1 node (total 19) at t = -3; the model's three finite singular points are A6",
            run: check_census,
        },
        Criterion {
            id: "square-factorization",
            module: "family",
            description: "on the b = 2a ray the pulled-back ansatz is the square of a cubic",
            run: check_square_factorization,
        },
        Criterion {
            id: "pencil-discriminant",
            module: "pencil",
            description: "the vertical-pencil discriminant factors as (degree-9) * y^14 * (2y - 1)^7",
            run: check_pencil_discriminant,
        },
        Criterion {
            id: "fiber-census",
            module: "pencil",
            description: "the reduced discriminant has five real roots (0 and 1/2 exact) and three complex-conjugate pairs",
            run: check_fiber_census,
        },
        Criterion {
            id: "group-orders",
            module: "group",
            description: "both two-generator presentations enumerate to order 42 and give isomorphic groups",
            run: check_group_orders,
        },
        Criterion {
            id: "group-epi",
            module: "group",
            description: "w -> a*b, x -> x is onto the order-42 product group; center of order 3, derived subgroup of order 7, abelianization Z/6",
            run: check_group_epi,
        },
        Criterion {
            id: "vankampen",
            module: "group",
            description: "the six-generator presentation collapses to the same order-42 group with abelianization Z/6",
            run: check_vankampen,
        },
        Criterion {
            id: "qforms",
            module: "qforms",
            description: "rank-3 7-torsion form: q(gamma0) = 0, |K| = 7, |K^perp| = 49, |K^perp/K| = 7, shift eigenvalues {1, 2, 4}",
            run: check_qforms,
        },
        Criterion {
            id: "epsilon-twist",
            module: "family",
            description: "the twist scalar equals omega at t in {0, 5/6, -3} and symbolically in t",
            run: check_twist,
        },
        Criterion {
            id: "properties",
            module: "property",
            description: "seeded property suites: ring axioms, resultant multiplicativity, root isolation, Smith forms, coset actions, polarization",
            run: check_properties,
        },
    ]
}

/// Module names accepted by the `--only` filter.
pub fn available_modules() -> Vec<&'static str> {
    let mut names: Vec<&'static str> = Vec::new();
    for c in criteria() {
        if !names.contains(&c.module) {
            names.push(c.module);
        }
    }
    names.push("control");
    names
}

/// Deliberately corrupted input must be rejected; if the comparison accepts
/// it, the whole checklist is meaningless.
pub fn negative_control() -> Result<(), String> {
    let g = affine_model().map_err(s)?;
    match g.proportionality(&fixtures::g_model_with_typo()) {
        None => Ok(()),
        Some(sc) => Err(format!(
            "a fixture with one corrupted coefficient was accepted (scale {sc}); the model comparison cannot detect errors"
        )),
    }
}

/// Run the checklist (optionally restricted to one module), in parallel.
pub fn run(only: Option<&str>) -> Result<Report, String> {
    if let Some(m) = only {
        let known = available_modules();
        if !known.contains(&m) {
            return Err(format!(
                "unknown module `{m}` (expected one of: {})",
                known.join(", ")
            ));
        }
    }
    let all = criteria();
    let selected: Vec<&Criterion> = all
        .iter()
        .filter(|c| only.is_none_or(|m| m == c.module))
        .collect();
    let mut outcomes: Vec<Outcome> = std::thread::scope(|scope| {
        let handles: Vec<_> = selected
            .iter()
            .map(|c| scope.spawn(move || run_one(c)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("criterion thread"))
            .collect()
    });
    if only.is_none_or(|m| m == "control") {
        let start = std::time::Instant::now();
        let result = negative_control();
        let secs = start.elapsed().as_secs_f64();
        outcomes.push(match result {
            Ok(()) => Outcome {
                id: "negative-control",
                module: "control",
                passed: true,
                line: format!("PASS negative-control: {CONTROL_DESCRIPTION} [{secs:.2}s]"),
            },
            Err(e) => Outcome {
                id: "negative-control",
                module: "control",
                passed: false,
                line: format!("FAIL negative-control: {CONTROL_DESCRIPTION}: {e} [{secs:.2}s]"),
            },
        });
    }
    Ok(Report { outcomes })
}

const CONTROL_DESCRIPTION: &str =
    "a single corrupted coefficient in the frozen model is detected as a mismatch";

fn run_one(c: &Criterion) -> Outcome {
    let start = std::time::Instant::now();
    let result = (c.run)();
    let secs = start.elapsed().as_secs_f64();
    match result {
        Ok(()) => Outcome {
            id: c.id,
            module: c.module,
            passed: true,
            line: format!("PASS {}: {} [{secs:.2}s]", c.id, c.description),
        },
        Err(e) => Outcome {
            id: c.id,
            module: c.module,
            passed: false,
            line: format!("FAIL {}: {}: {} [{secs:.2}s]", c.id, c.description, e),
        },
    }
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

// --- family ---------------------------------------------------------------

fn check_family_reconstruction() -> Result<(), String> {
    ensure(
        ray_solves_system(&kernel_ray(KernelRay::BMinusTwiceA)).map_err(s)?,
        "the b = -2a ray does not solve the tangency system",
    )?;
    let rec = reconstruct_family().map_err(s)?;
    ensure(
        rec.matches,
        "the pushforward quotient differs from (t^3 - 1)^3 times the family",
    )?;
    ensure(
        reducible_branch_matches(),
        "the t = 0 specialization does not match the reducible member",
    )
}

fn check_family_t1() -> Result<(), String> {
    let lhs = family_at(&rat_int(1));
    let e2 = MultiPoly::<Rat>::parse("z0*z1 + z1*z2 + z2*z0", &["z0", "z1", "z2"]).map_err(s)?;
    let rhs = e2.pow(3).scale(&rat_int(4));
    ensure(lhs == rhs, "C(1) != 4*(z0*z1 + z1*z2 + z2*z0)^3")
}

fn check_g_model() -> Result<(), String> {
    let g = affine_model().map_err(s)?;
    match g.proportionality(&fixtures::g_model()) {
        Some(sc) if sc == rat_int(1) => Ok(()),
        Some(sc) => Err(format!(
            "the computed model is {sc} times the frozen one, expected scale exactly 1"
        )),
        None => Err("the computed model is not proportional to the frozen coefficients".into()),
    }
}

fn check_square_factorization() -> Result<(), String> {
    ensure(
        ray_solves_system(&kernel_ray(KernelRay::BTwiceA)).map_err(s)?,
        "the b = 2a ray does not solve the tangency system",
    )?;
    ensure(
        square_factorization_holds().map_err(s)?,
        "the pullback on the b = 2a ray is not the square of the cubic",
    )
}

fn check_twist() -> Result<(), String> {
    for t in [rat_int(0), rat(5, 6), rat_int(-3)] {
        ensure(
            check_epsilon_twist(&t),
            format!("the twist scalar at t = {t} is not omega"),
        )?;
    }
    ensure(
        twist_scalar_symbolic() == Some(Eisenstein::omega()),
        "the symbolic twist scalar is not omega",
    )
}

// --- census ---------------------------------------------------------------

fn check_census() -> Result<(), String> {
    let vertices = [
        ProjPoint::from_ints([1, 0, 0]),
        ProjPoint::from_ints([0, 1, 0]),
        ProjPoint::from_ints([0, 0, 1]),
    ];
    let cases: [(Rat, u32, usize); 5] = [
        (rat_int(0), 18, 3),
        (rat(5, 6), 18, 3),
        (rat_int(2), 18, 3),
        (rat_int(-1), 18, 3),
        (rat_int(-3), 19, 4),
    ];
    for (t, mu, npoints) in cases {
        let census =
            find_singular_points(&family_at(&t)).map_err(|e| format!("census at t = {t}: {e}"))?;
        ensure(
            census.unresolved.is_empty(),
            format!("unresolved singular loci at t = {t}"),
        )?;
        ensure(
            census.points.len() == npoints,
            format!(
                "expected {npoints} singular points at t = {t}, found {}",
                census.points.len()
            ),
        )?;
        ensure(
            census.milnor_total() == mu,
            format!(
                "expected total Milnor number {mu} at t = {t}, got {}",
                census.milnor_total()
            ),
        )?;
        for v in &vertices {
            let rep = census
                .points
                .iter()
                .find(|p| p.point == *v)
                .ok_or_else(|| format!("no singular point at {v} for t = {t}"))?;
            ensure(
                rep.kind == SingKind::A(6) && rep.milnor == 6 && rep.hessian_corank == 1,
                format!(
                    "vertex {v} at t = {t} is {} with Milnor number {}, expected A6",
                    rep.kind, rep.milnor
                ),
            )?;
        }
        if npoints == 4 {
            let node = ProjPoint::from_ints([1, 1, 1]);
            let rep = census
                .points
                .iter()
                .find(|p| p.point == node)
                .ok_or_else(|| format!("no singular point at {node} for t = {t}"))?;
            ensure(
                rep.kind == SingKind::A(1),
                format!("the point {node} at t = {t} is {}, expected A1", rep.kind),
            )?;
        }
    }

    let g = affine_model().map_err(s)?;
    let gh = g.homogenized("z").map_err(s)?;
    for (x, y) in [
        (rat_int(-1), rat_int(0)),
        (rat_int(2), rat_int(0)),
        (rat(-1, 2), rat(1, 2)),
    ] {
        let pt = ProjPoint::new([
            Eisenstein::from_rat(x.clone()),
            Eisenstein::from_rat(y.clone()),
            Eisenstein::from_int(1),
        ])
        .map_err(s)?;
        let rep = classify_ak(&gh, &pt).map_err(s)?;
        ensure(
            rep.kind == SingKind::A(6),
            format!("model point ({x}, {y}) classified as {}, expected A6", rep.kind),
        )?;
    }
    Ok(())
}

// --- pencil ---------------------------------------------------------------

fn check_pencil_discriminant() -> Result<(), String> {
    let g = affine_model().map_err(s)?;
    let d = pencil_discriminant(&g).map_err(s)?;
    let y = MultiPoly::<Rat>::parse("y", &["y"]).map_err(s)?;
    let lin = MultiPoly::<Rat>::parse("2*y - 1", &["y"]).map_err(s)?;
    let claimed = [(fixtures::discriminant_deg9(), 1), (y, 14), (lin, 7)];
    ensure(
        verify_factorization(&d, &claimed),
        "the discriminant does not factor as (degree-9) * y^14 * (2y - 1)^7",
    )
}

fn check_fiber_census() -> Result<(), String> {
    let g = affine_model().map_err(s)?;
    let census = singular_fiber_census(&g).map_err(s)?;

    let mut mults: Vec<u32> = census.factors.iter().map(|(_, m)| *m).collect();
    mults.sort_unstable();
    ensure(
        mults == [1, 7, 14],
        format!("factor multiplicities {mults:?}, expected [1, 7, 14]"),
    )?;
    for (factor, mult) in &census.factors {
        let expected = match mult {
            1 => fixtures::discriminant_deg9(),
            7 => MultiPoly::<Rat>::parse("2*y - 1", &["y"]).map_err(s)?,
            14 => MultiPoly::<Rat>::parse("y", &["y"]).map_err(s)?,
            _ => unreachable!("multiplicities checked above"),
        };
        ensure(
            factor.proportionality(&expected).is_some(),
            format!("the multiplicity-{mult} factor is not the expected one"),
        )?;
    }

    let rv = &census.real_values;
    ensure(
        rv.len() == 5,
        format!("{} real singular fibers, expected 5", rv.len()),
    )?;
    ensure(
        census.complex_pair_count == 3,
        format!(
            "{} complex-conjugate pairs, expected 3",
            census.complex_pair_count
        ),
    )?;
    ensure(
        rv[2].is_exact() && rv[2].lo == rat_int(0),
        "the third real value should be exactly 0",
    )?;
    ensure(
        rv[4].is_exact() && rv[4].lo == rat(1, 2),
        "the fifth real value should be exactly 1/2",
    )?;
    for (idx, num, den) in [(0usize, -26i64, 100i64), (1, -11, 100), (3, 14, 100)] {
        let target = rat(num, den);
        let err = (rv[idx].midpoint() - &target).abs();
        ensure(
            err <= rat(1, 100),
            format!("real value #{idx} is not within 1/100 of {target}"),
        )?;
    }
    Ok(())
}

// --- group ----------------------------------------------------------------

fn named(name: &str) -> Result<Presentation, String> {
    named_presentation(name).ok_or_else(|| format!("unknown presentation `{name}`"))
}

fn table_of(pres: &Presentation) -> Result<MulTable, String> {
    let t = CosetTable::enumerate(pres, &[], DEFAULT_COSET_LIMIT);
    if !t.is_complete() {
        return Err(format!(
            "coset enumeration overflowed after {} cosets",
            t.num_cosets()
        ));
    }
    MulTable::from_coset_table(&t).map_err(s)
}

fn check_group_orders() -> Result<(), String> {
    let g = table_of(&named("G")?)?;
    let alt = table_of(&named("G-alt")?)?;
    ensure(
        g.order() == 42,
        format!("the first presentation has order {}, expected 42", g.order()),
    )?;
    ensure(
        alt.order() == 42,
        format!("the second presentation has order {}, expected 42", alt.order()),
    )?;
    ensure(
        isomorphic(&g, &alt),
        "the two presentations give non-isomorphic groups",
    )
}

fn check_group_epi() -> Result<(), String> {
    let gp = named("G")?;
    let target = table_of(&named("d14c3")?)?;
    let gens = target.generator_elements().to_vec();
    let images = [target.mul(gens[0], gens[1]), gens[2]];
    match verify_homomorphism(&gp, &target, &images).map_err(s)? {
        HomStatus::Epimorphism => {}
        other => {
            return Err(format!(
                "w -> a*b, x -> x gives {other}, expected an epimorphism"
            ))
        }
    }
    let g_table = table_of(&gp)?;
    ensure(
        g_table.order() == target.order() && target.order() == 42,
        format!(
            "orders {} and {} should both be 42",
            g_table.order(),
            target.order()
        ),
    )?;
    // An epimorphism between groups of equal finite order is an isomorphism;
    // confirm it against the tables directly.
    ensure(
        isomorphic(&g_table, &target),
        "equal orders, yet the tables are not isomorphic",
    )?;
    let fp = g_table.identify();
    ensure(
        !fp.abelian && fp.center_order == 3 && fp.derived_order == 7,
        format!(
            "fingerprint has center order {} and derived order {}, expected 3 and 7",
            fp.center_order, fp.derived_order
        ),
    )?;
    let ab = abelianization(&gp);
    ensure(
        ab == vec![BigInt::from(6)],
        format!("abelianization {ab:?}, expected [6]"),
    )
}

fn check_vankampen() -> Result<(), String> {
    let vk = vankampen_presentation();
    let t = CosetTable::enumerate(&vk, &[], DEFAULT_COSET_LIMIT);
    ensure(
        t.is_complete(),
        format!("coset enumeration overflowed after {} cosets", t.num_cosets()),
    )?;
    let table = MulTable::from_coset_table(&t).map_err(s)?;
    if table.order() != 42 {
        return Err(format!(
            "the presentation enumerates to order {}, expected 42",
            table.order()
        ));
    }
    let g = table_of(&named("G")?)?;
    ensure(
        isomorphic(&table, &g),
        "the order-42 quotient is not isomorphic to the reference group",
    )?;
    let ab = abelianization(&vk);
    ensure(
        ab == vec![BigInt::from(6)],
        format!("abelianization {ab:?}, expected [6]"),
    )
}

// --- quadratic forms --------------------------------------------------------

fn check_qforms() -> Result<(), String> {
    let a6 = FiniteQuadraticForm::discr_an(6);
    let f = FiniteQuadraticForm::direct_sum(&[a6.clone(), a6.clone(), a6]);
    ensure(f.order() == 343, format!("|G| = {}, expected 343", f.order()))?;

    let gamma0 = f.element(&[4, 2, 1]).map_err(s)?;
    let q0 = f.q_value(&gamma0);
    ensure(q0 == rat_int(0), format!("q(gamma0) = {q0}, expected 0"))?;

    let k = f.subgroup(std::slice::from_ref(&gamma0)).map_err(s)?;
    ensure(k.order() == 7, format!("|K| = {}, expected 7", k.order()))?;
    ensure(f.is_isotropic(&k), "K is not isotropic")?;

    let kperp = f.orthogonal_complement(&k).map_err(s)?;
    ensure(
        kperp.order() == 49,
        format!("|K^perp| = {}, expected 49", kperp.order()),
    )?;
    ensure(
        k.order() * kperp.order() == f.order(),
        "|K| * |K^perp| != |G|",
    )?;

    let quotient = f.orthogonal_complement_quotient(&k).map_err(s)?;
    ensure(
        quotient.order() == 7 && quotient.orders() == [7],
        format!(
            "K^perp/K has invariant factors {:?}, expected [7]",
            quotient.orders()
        ),
    )?;
    ensure(polarization_holds(&f).map_err(s)?, "the polarization identity fails")?;

    let shift = vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]];
    ensure(
        f.is_form_automorphism(&shift).map_err(s)?,
        "the cyclic coordinate shift is not a form automorphism",
    )?;
    let eigen = f.eigenspace_decomposition(&shift).map_err(s)?;
    let lambdas: Vec<u32> = eigen.keys().copied().collect();
    ensure(
        lambdas == [1, 2, 4],
        format!("shift eigenvalues {lambdas:?}, expected [1, 2, 4]"),
    )?;
    ensure(
        eigen.values().all(|v| v.order() == 7),
        "each eigenspace should have order 7",
    )?;
    ensure(
        eigen[&2].elements().eq(k.elements()),
        "the 2-eigenspace is not K",
    )?;
    ensure(
        f.apply_matrix(&shift, &gamma0).map_err(s)? == f.scale(2, &gamma0),
        "the shift does not send gamma0 to 2*gamma0",
    )?;
    ensure(
        f.element(&[1, 4, 2]).map_err(s)? == f.scale(2, &gamma0),
        "(1, 4, 2) != 2*gamma0",
    )?;
    ensure(
        f.element(&[2, 1, 4]).map_err(s)? == f.scale(4, &gamma0),
        "(2, 1, 4) != 4*gamma0",
    )
}

// --- property suites --------------------------------------------------------

/// Minimal xorshift64 generator so the suites are reproducible without a
/// dependency; seeds are fixed in the criterion.
struct Rng(u64);

impl Rng {
    fn new(seed: u64) -> Self {
        Rng(seed | 1)
    }

    fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn int(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next_u64() % ((hi - lo + 1) as u64)) as i64
    }
}

fn check_properties() -> Result<(), String> {
    prop_ring_axioms(0xC0FFEE).map_err(|e| format!("ring axioms: {e}"))?;
    prop_resultant_multiplicative(0xBEEF).map_err(|e| format!("resultant: {e}"))?;
    prop_root_isolation(0x5EED).map_err(|e| format!("root isolation: {e}"))?;
    prop_smith_forms().map_err(|e| format!("Smith forms: {e}"))?;
    prop_coset_actions().map_err(|e| format!("coset actions: {e}"))?;
    prop_polarization(0xAB1E).map_err(|e| format!("polarization: {e}"))
}

fn random_poly(rng: &mut Rng, vars: &[&str], max_deg: i64, max_terms: i64) -> MultiPoly<Rat> {
    let mut p = MultiPoly::<Rat>::zero(vars);
    for _ in 0..rng.int(1, max_terms) {
        let exps: Vec<u32> = (0..vars.len()).map(|_| rng.int(0, max_deg) as u32).collect();
        let c = rng.int(-9, 9);
        if c != 0 {
            p = &p + &MultiPoly::monomial(vars, &exps, rat_int(c));
        }
    }
    p
}

fn prop_ring_axioms(seed: u64) -> Result<(), String> {
    let mut rng = Rng::new(seed);
    let vars = ["x", "y"];
    for round in 0..12 {
        let a = random_poly(&mut rng, &vars, 3, 4);
        let b = random_poly(&mut rng, &vars, 3, 4);
        let c = random_poly(&mut rng, &vars, 3, 4);
        ensure(&a + &b == &b + &a, format!("round {round}: a + b != b + a"))?;
        ensure(
            &(&a + &b) + &c == &a + &(&b + &c),
            format!("round {round}: addition is not associative"),
        )?;
        ensure(&a * &b == &b * &a, format!("round {round}: a * b != b * a"))?;
        ensure(
            &(&a * &b) * &c == &a * &(&b * &c),
            format!("round {round}: multiplication is not associative"),
        )?;
        ensure(
            &a * &(&b + &c) == &(&a * &b) + &(&a * &c),
            format!("round {round}: multiplication does not distribute"),
        )?;
        ensure(
            &(&a - &b) + &b == a,
            format!("round {round}: subtraction is not inverse to addition"),
        )?;
    }
    Ok(())
}

fn random_univar(rng: &mut Rng, deg: u32) -> MultiPoly<Rat> {
    let mut p = MultiPoly::<Rat>::zero(&["x"]);
    for e in 0..=deg {
        let c = if e == deg {
            let mut c = 0;
            while c == 0 {
                c = rng.int(-9, 9);
            }
            c
        } else {
            rng.int(-9, 9)
        };
        if c != 0 {
            p = &p + &MultiPoly::monomial(&["x"], &[e], rat_int(c));
        }
    }
    p
}

fn prop_resultant_multiplicative(seed: u64) -> Result<(), String> {
    let mut rng = Rng::new(seed);
    for round in 0..6 {
        let df = rng.int(1, 2) as u32;
        let f = random_univar(&mut rng, df);
        let dg = rng.int(1, 2) as u32;
        let g = random_univar(&mut rng, dg);
        let dh = rng.int(1, 2) as u32;
        let h = random_univar(&mut rng, dh);
        let fg = f.checked_mul(&g).map_err(s)?;
        let lhs = resultant(&fg, &h, "x").map_err(s)?;
        let rhs = resultant(&f, &h, "x")
            .map_err(s)?
            .checked_mul(&resultant(&g, &h, "x").map_err(s)?)
            .map_err(s)?;
        ensure(
            lhs == rhs,
            format!("round {round}: Res(fg, h) != Res(f, h) * Res(g, h)"),
        )?;
    }
    Ok(())
}

fn prop_root_isolation(seed: u64) -> Result<(), String> {
    let mut rng = Rng::new(seed);
    let x = MultiPoly::<Rat>::var(&["x"], "x");
    for round in 0..8 {
        let k = rng.int(0, 3) as usize;
        let mut roots = std::collections::BTreeSet::new();
        while roots.len() < k {
            roots.insert(rat(rng.int(-20, 20), rng.int(1, 4)));
        }
        // A rootless even factor keeps the polynomial honest about degree.
        let mut p = &x.pow(2) + &MultiPoly::constant(&["x"], rat_int(rng.int(1, 9)));
        for r in &roots {
            let factor = &x - &MultiPoly::constant(&["x"], r.clone());
            p = p.checked_mul(&factor).map_err(s)?;
        }
        let intervals = isolate_real_roots(&p).map_err(s)?;
        ensure(
            intervals.len() == k,
            format!("round {round}: isolated {} roots, expected {k}", intervals.len()),
        )?;
        for r in &roots {
            ensure(
                intervals.iter().filter(|iv| iv.contains(r)).count() == 1,
                format!("round {round}: the root {r} is not isolated exactly once"),
            )?;
        }
    }
    Ok(())
}

fn prop_smith_forms() -> Result<(), String> {
    let cases: &[(&[&[i64]], &[i64])] = &[
        (&[&[0, 2], &[-3, 0]], &[1, 6]),
        (&[&[0, 2], &[3, 2]], &[1, 6]),
        (&[&[2, 4], &[6, 8]], &[2, 4]),
        (&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]], &[1, 3]),
        (&[&[6, 0], &[0, 4]], &[2, 12]),
    ];
    for (rows, want) in cases {
        let mat = IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>());
        let snf = smith_normal_form(&mat);
        let expected: Vec<BigInt> = want.iter().map(|&v| BigInt::from(v)).collect();
        ensure(
            snf.invariant_factors == expected,
            format!(
                "SNF of {rows:?} gave {:?}, expected {want:?}",
                snf.invariant_factors
            ),
        )?;
    }
    Ok(())
}

fn prop_coset_actions() -> Result<(), String> {
    for text in [
        "<x | x^6>",
        "<a, b | a^2, b^2, a*b*a^-1*b^-1>",
        "<w, x | x^2, w^-2*x*w^5*x>",
    ] {
        let pres = Presentation::parse(text).map_err(s)?;
        let t = CosetTable::enumerate(&pres, &[], 10_000);
        ensure(t.is_complete(), format!("{text}: enumeration did not complete"))?;
        let n = t.num_cosets();
        for g in 1..=t.num_generators() as i32 {
            let mut seen = vec![false; n];
            for c in 0..n {
                let img = t
                    .action(c, g)
                    .ok_or_else(|| format!("{text}: missing action"))?;
                ensure(
                    !seen[img],
                    format!("{text}: generator {g} is not a permutation"),
                )?;
                seen[img] = true;
                ensure(
                    t.action(img, -g) == Some(c),
                    format!("{text}: inverse action disagrees"),
                )?;
            }
        }
        for rel in pres.relators() {
            for c in 0..n {
                ensure(
                    t.trace(c, rel) == Some(c),
                    format!("{text}: a relator does not fix coset {c}"),
                )?;
            }
        }
    }
    let pres = Presentation::parse("<x | x^6>").map_err(s)?;
    let sub = [pres.parse_word("x^2").map_err(s)?];
    let t = CosetTable::enumerate(&pres, &sub, 10_000);
    ensure(
        t.num_cosets() == 2,
        format!("index of <x^2> in C6: {}, expected 2", t.num_cosets()),
    )
}

fn mod_two(x: &Rat) -> Rat {
    let two = rat_int(2);
    x - (x / &two).floor() * two
}

fn prop_polarization(seed: u64) -> Result<(), String> {
    let mut rng = Rng::new(seed);
    for round in 0..5 {
        let rank = rng.int(1, 2);
        let blocks: Vec<FiniteQuadraticForm> = (0..rank)
            .map(|_| FiniteQuadraticForm::discr_an(rng.int(1, 6) as u32))
            .collect();
        let f = FiniteQuadraticForm::direct_sum(&blocks);
        ensure(
            polarization_holds(&f).map_err(s)?,
            format!("round {round}: polarization fails on a random direct sum"),
        )?;
        let elems = f.all_elements().map_err(s)?;
        for _ in 0..10 {
            let e = &elems[rng.int(0, elems.len() as i64 - 1) as usize];
            let k = rng.int(0, 12);
            let direct = f.q_value(&f.scale(k, e));
            let scaled = mod_two(&(f.q_value(e) * rat_int(k * k)));
            ensure(
                direct == scaled,
                format!("round {round}: q({k} * e) != {k}^2 * q(e) mod 2"),
            )?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criterion_ids_and_modules_are_consistent() {
        let all = criteria();
        assert_eq!(all.len(), 13);
        let mut ids: Vec<&str> = all.iter().map(|c| c.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), 13, "criterion ids must be unique");
        let modules = available_modules();
        assert!(all.iter().all(|c| modules.contains(&c.module)));
        assert!(modules.contains(&"control"));
    }

    #[test]
    fn module_filter_is_validated() {
        assert!(run(Some("no-such-module")).is_err());
    }

    #[test]
    fn cheap_criteria_pass() {
        check_family_t1().unwrap();
        check_twist().unwrap();
        prop_smith_forms().unwrap();
        prop_coset_actions().unwrap();
    }

    #[test]
    fn filtered_run_reports_only_one_module() {
        let report = run(Some("qforms")).unwrap();
        assert_eq!(report.outcomes.len(), 1);
        assert!(report.outcomes[0].passed, "{}", report.outcomes[0].line);
        assert_eq!(report.summary(), "1 passed, 0 failed");
    }
}
