//! Frozen reference data: the affine sextic model with all 28 coefficients
//! written out, and the degree-9 factor of its pencil discriminant.  These
//! are transcribed independently of the construction code so that the
//! verification commands compare two genuinely separate sources.

use sextic_core::exact::{MultiPoly, Rat};

/// The affine model `g(x, y)` with every coefficient spelled out.
pub fn g_model() -> MultiPoly<Rat> {
    MultiPoly::parse(G_MODEL_TEXT, &["x", "y"]).expect("fixture parses")
}

/// The same polynomial with one digit altered (`716 -> 715` in the `x`
/// coefficient): a negative control that any comparison against
/// [`g_model`] must be able to tell apart from the real thing.
pub fn g_model_with_typo() -> MultiPoly<Rat> {
    let typo = G_MODEL_TEXT.replacen("716/19683*x", "715/19683*x", 1);
    assert_ne!(typo, G_MODEL_TEXT, "control fixture must differ");
    MultiPoly::parse(&typo, &["x", "y"]).expect("fixture parses")
}

const G_MODEL_TEXT: &str = "\
    716/19683*x + 17872/177147*y - 11503/708588*x*y - 356093/354294*x*y^2 \
    + 322559/5668704*x^3*y + 3568/177147 - 722513/2834352*x^2*y \
    - 8137/472392*x^2 - 28582655/2834352*x*y^5 + 56261293/22674816*y^4 \
    - 449027/1417176*y^2 - 4427549/2834352*y^3 + 81485377/11337408*y^5 \
    - 255219619/22674816*y^6 - 57539/1417176*x^3 + 2243/209952*x^4 \
    - 26011/5668704*x^6 + 2726579/7558272*x^2*y^2 + 1092623/1259712*x*y^3 \
    + 9868757/11337408*x^3*y^2 + 11718893/3779136*x^2*y^3 \
    + 77768419/11337408*x*y^4 - 309307/5668704*x^5*y \
    - 9030539/22674816*x^4*y^2 - 9923629/5668704*x^3*y^3 \
    - 61362175/11337408*x^2*y^4 + 12505/944784*x^5 + 397175/2834352*x^4*y";

/// The irreducible degree-9 factor of the pencil discriminant of the
/// affine model, normalised to positive integer leading coefficient.
pub fn discriminant_deg9() -> MultiPoly<Rat> {
    MultiPoly::parse(
        "90617210907008*y^9 - 60741238168704*y^8 - 52338630572904*y^7 \
         + 38781803208839*y^6 + 8841431367018*y^5 - 8143800845364*y^4 \
         - 176669916264*y^3 + 512733413664*y^2 - 7789219200*y - 6298560000",
        &["y"],
    )
    .expect("fixture parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use sextic_core::exact::rat;

    #[test]
    fn model_fixture_has_28_terms_and_known_values() {
        let g = g_model();
        assert_eq!(g.num_terms(), 28);
        assert_eq!(g.coeff(&[0, 0]), rat(3568, 177147));
        assert_eq!(g.coeff(&[1, 0]), rat(716, 19683));
        assert_eq!(g.coeff(&[0, 6]), rat(-255219619, 22674816));
        assert_eq!(g.coeff(&[6, 0]), rat(-26011, 5668704));
    }

    #[test]
    fn typo_fixture_differs_in_exactly_one_coefficient() {
        let g = g_model();
        let bad = g_model_with_typo();
        assert_ne!(g, bad);
        assert_eq!(bad.coeff(&[1, 0]), rat(715, 19683));
        let differing = g
            .terms()
            .filter(|(m, c)| bad.coeff(m.exps()) != (*c).clone())
            .count();
        assert_eq!(differing, 1);
    }

    #[test]
    fn discriminant_fixture_degree_and_ends() {
        let d = discriminant_deg9();
        assert_eq!(d.total_degree(), Some(9));
        assert_eq!(d.coeff(&[9]), rat(90617210907008, 1));
        assert_eq!(d.coeff(&[0]), rat(-6298560000, 1));
    }
}
