use crate::error::{Error, Result};
use crate::geometry::SampleGrid;
use crate::kernel::SpaceParams;
use crate::operators::OperatorSpec;
use crate::series::PowerSeries;

use super::dsl::{parse_operator_spec, render};

/// A named, reproducible range plot.
#[derive(Debug, Clone, PartialEq)]
pub struct FigurePreset {
    pub name: &'static str,
    pub title: &'static str,
    pub op: String,
    pub gamma: f64,
}

/// Grid used for figures; coarser than the classification default to keep
/// the SVG small.
pub fn figure_grid() -> SampleGrid {
    SampleGrid::new(90, 180, 0.999).expect("valid grid")
}

impl FigurePreset {
    pub fn spec(&self) -> OperatorSpec {
        parse_operator_spec(&self.op).expect("preset operators parse")
    }

    pub fn params(&self) -> SpaceParams {
        SpaceParams::new(self.gamma).expect("preset weights are positive")
    }
}

const ONE_MINUS_Z: &str = "pairs:[(g=[1,-1];h=[1,0,-1])]";

/// `⟨f, sin z⟩ sin z + ⟨f, z²⟩ z²` with `sin` truncated after `z¹⁷`.
fn sine_plus_square() -> String {
    let sine = PowerSeries::sine(17);
    let square = PowerSeries::monomial(2, num_complex::Complex64::new(1.0, 0.0));
    render(&OperatorSpec::GeneralFiniteRank { pairs: vec![(sine.clone(), sine), (square.clone(), square)] })
}

pub fn presets() -> Vec<FigurePreset> {
    let sin_z2 = sine_plus_square();
    macro_rules! p {
        ($name:literal, $title:literal, $op:expr, $gamma:literal) => {
            FigurePreset { name: $name, title: $title, op: $op.to_string(), gamma: $gamma }
        };
    }
    vec![
        p!("rank1-z-g0.01", "T(f) = <f, z> z, gamma = 0.01", "rank1:m=1,n=1", 0.01),
        p!("rank1-z-hardy", "T(f) = <f, z> z, gamma = 1 (Hardy space)", "rank1:m=1,n=1", 1.0),
        p!("rank1-z-bergman", "T(f) = <f, z> z, gamma = 2 (Bergman space)", "rank1:m=1,n=1", 2.0),
        p!("rank1-z3-hardy", "T(f) = <f, z^3> z^3, gamma = 1 (Hardy space)", "rank1:m=3,n=3", 1.0),
        p!("rank1-z3-bergman", "T(f) = <f, z^3> z^3, gamma = 2 (Bergman space)", "rank1:m=3,n=3", 2.0),
        p!("rank1-z3-g10", "T(f) = <f, z^3> z^3, gamma = 10", "rank1:m=3,n=3", 10.0),
        p!("diag-hardy", "sum <f, a_i z^i> a_i z^i, a = (1+i, 1-i, i), gamma = 1", "diag:a=[1+1i,1-1i,1i]", 1.0),
        p!("diag-bergman", "sum <f, a_i z^i> a_i z^i, a = (1+i, 1-i, i), gamma = 2", "diag:a=[1+1i,1-1i,1i]", 2.0),
        p!("diag-g4", "sum <f, a_i z^i> a_i z^i, a = (1+i, 1-i, i), gamma = 4", "diag:a=[1+1i,1-1i,1i]", 4.0),
        p!("geom-hardy", "sum_n <f, a z^n> a z^n, a = (1+i)/2, gamma = 1", "geom:a=0.5+0.5i", 1.0),
        p!("geom-bergman", "sum_n <f, a z^n> a z^n, a = (1+i)/2, gamma = 2", "geom:a=0.5+0.5i", 2.0),
        p!("geom-g4", "sum_n <f, a z^n> a z^n, a = (1+i)/2, gamma = 4", "geom:a=0.5+0.5i", 4.0),
        p!("sin-square-hardy", "<f, sin z> sin z + <f, z^2> z^2, gamma = 1", &sin_z2, 1.0),
        p!("sin-square-bergman", "<f, sin z> sin z + <f, z^2> z^2, gamma = 2", &sin_z2, 2.0),
        p!("sin-square-g5", "<f, sin z> sin z + <f, z^2> z^2, gamma = 5", &sin_z2, 5.0),
        p!("one-minus-z-g0.1", "T(f) = <f, 1-z> (1-z^2), gamma = 0.1", ONE_MINUS_Z, 0.1),
        p!("one-minus-z-g0.01", "T(f) = <f, 1-z> (1-z^2), gamma = 0.01", ONE_MINUS_Z, 0.01),
        p!("one-minus-z-g0.3", "T(f) = <f, 1-z> (1-z^2), gamma = 0.3", ONE_MINUS_Z, 0.3),
        p!("one-minus-z-g0.5", "T(f) = <f, 1-z> (1-z^2), gamma = 0.5", ONE_MINUS_Z, 0.5),
        p!("one-minus-z-g1", "T(f) = <f, 1-z> (1-z^2), gamma = 1 (Hardy space)", ONE_MINUS_Z, 1.0),
        p!("one-minus-z-g2", "T(f) = <f, 1-z> (1-z^2), gamma = 2 (Bergman space)", ONE_MINUS_Z, 2.0),
        p!("one-minus-z-g10", "T(f) = <f, 1-z> (1-z^2), gamma = 10", ONE_MINUS_Z, 10.0),
        p!("proj-g0.5", "P(f) = 3 <f, z^2> z^2, gamma = 0.5", "proj:k=2", 0.5),
        p!("proj-hardy", "P(f) = 3 <f, z^2> z^2, gamma = 1 (Hardy space)", "proj:k=2", 1.0),
        p!("proj-bergman", "P(f) = 3 <f, z^2> z^2, gamma = 2 (Bergman space)", "proj:k=2", 2.0),
        p!("rank23-g0.5", "T(f) = <f, z^2> z^3, gamma = 1/2", "rank1:m=2,n=3", 0.5),
        p!("rank23-hardy", "T(f) = <f, z^2> z^3, gamma = 1 (Hardy space)", "rank1:m=2,n=3", 1.0),
        p!("rank23-bergman", "T(f) = <f, z^2> z^3, gamma = 2 (Bergman space)", "rank1:m=2,n=3", 2.0),
        p!("rank23-g10", "T(f) = <f, z^2> z^3, gamma = 10", "rank1:m=2,n=3", 10.0),
        p!("mult-1mi-z3", "M_phi, phi(z) = (1-i) z^3", "mult:poly=[0,0,0,1-1i]", 1.0),
        p!("mult-3iz4", "M_phi, phi(z) = 3i z^4 + 2 + i", "mult:poly=[2+1i,0,0,0,3i]", 1.0),
        p!("mult-z4-5z", "M_phi, phi(z) = z^4 + 5z - 2i", "mult:poly=[-2i,5,0,0,1]", 1.0),
        p!("mult-z14", "M_phi, phi(z) = z^14 + 5z^2 - 2z + 3", "mult:poly=[3,-2,5,0,0,0,0,0,0,0,0,0,0,0,1]", 1.0),
        p!(
            "bfactor-zeta1",
            "M_phi, phi(z) = zeta (alpha - z)/(1 - conj(alpha) z), zeta = (1+i)/sqrt 2, alpha = (1-2i)/3",
            "mult:bfactor:zeta=0.7071067811865476+0.7071067811865476i;alpha=0.3333333333333333-0.6666666666666666i",
            1.0
        ),
        p!(
            "bfactor-zeta-half",
            "M_phi, phi(z) = zeta (alpha - z)/(1 - conj(alpha) z), zeta = i/2, alpha = (1-2i)/3",
            "mult:bfactor:zeta=0.5i;alpha=0.3333333333333333-0.6666666666666666i",
            1.0
        ),
        p!(
            "bfactor-zeta2",
            "M_phi, phi(z) = zeta (alpha - z)/(1 - conj(alpha) z), zeta = sqrt 2 (1+i), alpha = (1-2i)/3",
            "mult:bfactor:zeta=1.4142135623730951+1.4142135623730951i;alpha=0.3333333333333333-0.6666666666666666i",
            1.0
        ),
    ]
}

pub fn find(name: &str) -> Result<FigurePreset> {
    presets().into_iter().find(|p| p.name == name).ok_or_else(|| {
        let names: Vec<&str> = presets().iter().map(|p| p.name).collect();
        Error::Parse { pos: 0, msg: format!("unknown preset '{name}'; available: {}", names.join(", ")) }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_presets_parse() {
        let all = presets();
        for p in &all {
            p.spec();
            p.params();
        }
        let mut names: Vec<_> = all.iter().map(|p| p.name).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), all.len());
        assert!(find("nope").is_err());
    }
}
