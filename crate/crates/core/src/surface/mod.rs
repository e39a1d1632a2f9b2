//! Surface invariants of the doubled link, the closed-form fibredness test, and
//! satellite data.

mod poly;

pub use poly::{substitute, LaurentPolynomial, PolyError};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linkword::{counts, is_two_component, ContinuedFraction, Counts, SignedWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("counts (0, 0): the link is the two-component unlink")]
    Unlink,
    #[error("{0} is not a two-component link (odd denominator)")]
    NotTwoComponent(ContinuedFraction),
    #[error("companion knot must be nontrivial (genus >= 1)")]
    TrivialCompanion,
    #[error("a pattern with counts ({0}, {1}) cannot be fibred")]
    FibredWithZeroWinding(u32, u32),
    #[error("satellite Euler characteristic {0} is even, so it is not a knot surface")]
    EvenEuler(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSummary {
    pub euler: i64,
    pub genus: u32,
    pub num_components: u8,
    pub boundary_components: u8,
}

pub fn surface_summary(c: Counts) -> Result<SurfaceSummary, SurfaceError> {
    if c.total() == 0 {
        return Err(SurfaceError::Unlink);
    }
    let max = c.max();
    let (genus, num_components) = if c.n_plus == c.n_minus {
        (max, 2)
    } else {
        (max - 1, 1)
    };
    Ok(SurfaceSummary {
        euler: 1 - 2 * i64::from(max),
        genus,
        num_components,
        boundary_components: 3,
    })
}

/// `(N=1, a1 even)` or `(N>1, a1 and aN odd, interior coefficients even)`.
pub fn fibred_criterion(cf: &ContinuedFraction) -> Result<bool, SurfaceError> {
    if !is_two_component(cf) {
        return Err(SurfaceError::NotTwoComponent(cf.clone()));
    }
    let a = cf.coefficients();
    let even = |x: &u32| x.is_multiple_of(2);
    Ok(match a {
        [a1] => even(a1),
        [first, interior @ .., last] => !even(first) && !even(last) && interior.iter().all(even),
        [] => unreachable!("continued fractions are nonempty"),
    })
}

/// No odd separator, and every separator other than the infinity one has no twists.
pub fn word_fibred(sw: &SignedWord) -> Result<bool, SurfaceError> {
    if sw.is_empty() {
        return Err(SurfaceError::Unlink);
    }
    Ok(sw
        .word()
        .letters()
        .iter()
        .filter_map(|l| l.as_separator())
        .all(|s| !s.is_odd() && (s.is_infinity || s.twists == 0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternSummary {
    pub euler_pattern: i64,
    pub winding: u32,
    pub fibred: bool,
}

pub fn pattern_summary(sw: &SignedWord) -> Result<PatternSummary, SurfaceError> {
    let fibred = word_fibred(sw)?;
    pattern_from_counts(counts(sw), fibred)
}

/// Pattern data when only the counts are known; `fibred` must be supplied.
pub fn pattern_from_counts(c: Counts, fibred: bool) -> Result<PatternSummary, SurfaceError> {
    if c.total() == 0 {
        return Err(SurfaceError::Unlink);
    }
    if fibred && c.min() > 0 {
        return Err(SurfaceError::FibredWithZeroWinding(c.n_plus, c.n_minus));
    }
    Ok(PatternSummary {
        euler_pattern: 1 - i64::from(c.total()),
        winding: c.winding(),
        fibred,
    })
}

pub fn chi_l3(p: &PatternSummary) -> i64 {
    p.euler_pattern - i64::from(p.winding)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompanionKnot {
    pub genus: u32,
    pub fibred: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alexander: Option<LaurentPolynomial>,
}

impl CompanionKnot {
    pub fn new(
        genus: u32,
        fibred: bool,
        alexander: Option<LaurentPolynomial>,
    ) -> Result<Self, SurfaceError> {
        let k = Self {
            genus,
            fibred,
            alexander,
        };
        k.validate()?;
        Ok(k)
    }

    pub fn trefoil() -> Self {
        Self {
            genus: 1,
            fibred: true,
            alexander: Some(LaurentPolynomial::new(-1, vec![1, -1, 1])),
        }
    }

    pub fn validate(&self) -> Result<(), SurfaceError> {
        if self.genus == 0 {
            return Err(SurfaceError::TrivialCompanion);
        }
        Ok(())
    }

    pub fn euler(&self) -> i64 {
        1 - 2 * i64::from(self.genus)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatelliteReport {
    pub euler: i64,
    pub genus: u32,
    pub fibred: bool,
    pub winding: u32,
    pub euler_pattern: i64,
    pub alexander: Option<LaurentPolynomial>,
}

/// Euler characteristic `|l| chi(K) + chi(pattern)`; fibred iff both pieces are.
/// With winding 0 the polynomial is the constant `Delta_K(1)`.
pub fn satellite_report(
    p: &PatternSummary,
    k: &CompanionKnot,
) -> Result<SatelliteReport, SurfaceError> {
    k.validate()?;
    let euler = i64::from(p.winding) * k.euler() + p.euler_pattern;
    if euler % 2 == 0 {
        return Err(SurfaceError::EvenEuler(euler));
    }
    let alexander = k.alexander.as_ref().map(|delta| match p.winding {
        0 => LaurentPolynomial::constant(delta.eval_at_one()),
        l => delta.substitute(l).expect("winding is positive"),
    });
    Ok(SatelliteReport {
        euler,
        genus: ((1 - euler) / 2) as u32,
        fibred: k.fibred && p.fibred,
        winding: p.winding,
        euler_pattern: p.euler_pattern,
        alexander,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linkword::{assign_signs, parse_word, NINE_PASSAGE_EXAMPLE};
    use proptest::prelude::*;

    fn signed(text: &str) -> SignedWord {
        assign_signs(&parse_word(text).unwrap())
    }

    fn cf(v: &[u32]) -> ContinuedFraction {
        ContinuedFraction::new(v.to_vec()).unwrap()
    }

    #[test]
    fn summaries_from_counts() {
        let s = surface_summary(Counts::new(5, 4)).unwrap();
        assert_eq!((s.euler, s.genus, s.num_components), (-9, 4, 1));
        let s = surface_summary(Counts::new(1, 1)).unwrap();
        assert_eq!((s.euler, s.genus, s.num_components), (-1, 1, 2));
        let s = surface_summary(Counts::new(1, 0)).unwrap();
        assert_eq!((s.euler, s.genus, s.num_components), (-1, 0, 1));
        assert_eq!(
            surface_summary(Counts::default()),
            Err(SurfaceError::Unlink)
        );
    }

    #[test]
    fn closed_form_criterion() {
        assert!(fibred_criterion(&cf(&[2])).unwrap());
        assert!(fibred_criterion(&cf(&[1, 2, 1])).unwrap());
        assert!(fibred_criterion(&cf(&[3, 2, 1])).unwrap());
        assert!(!fibred_criterion(&cf(&[1, 1, 1, 1, 1])).unwrap());
        assert!(!fibred_criterion(&cf(&[2, 2, 2])).unwrap());
        assert!(fibred_criterion(&cf(&[1, 1, 1])).is_err());
    }

    #[test]
    fn word_fibredness() {
        assert!(word_fibred(&signed("*E:4 A E:0 A")).unwrap());
        assert!(!word_fibred(&signed("*E:0 A E:2 A")).unwrap());
        assert!(!word_fibred(&signed(NINE_PASSAGE_EXAMPLE)).unwrap());
        assert!(word_fibred(&signed("")).is_err());
    }

    #[test]
    fn pattern_examples() {
        let p = pattern_from_counts(Counts::new(2, 0), true).unwrap();
        assert_eq!((p.euler_pattern, p.winding, chi_l3(&p)), (-1, 2, -3));
        let p = pattern_from_counts(Counts::new(3, 1), false).unwrap();
        assert_eq!((p.euler_pattern, p.winding, chi_l3(&p)), (-3, 2, -5));
        let p = pattern_summary(&signed("*O:1 A O:1 A")).unwrap();
        assert_eq!((p.winding, p.fibred), (0, false));
        assert!(pattern_from_counts(Counts::new(1, 1), true).is_err());
    }

    #[test]
    fn satellite_examples() {
        let alpha = pattern_from_counts(Counts::new(2, 0), true).unwrap();
        let beta = pattern_from_counts(Counts::new(3, 1), false).unwrap();
        let k = CompanionKnot::trefoil();
        let a = satellite_report(&alpha, &k).unwrap();
        assert_eq!((a.euler, a.genus, a.fibred), (-3, 2, true));
        let b = satellite_report(&beta, &k).unwrap();
        assert_eq!((b.euler, b.genus, b.fibred), (-5, 3, false));
        assert_eq!(a.alexander, b.alexander);
        assert_eq!(
            a.alexander.unwrap().normalized().to_string(),
            "t^4 - t^2 + 1"
        );

        let zero = pattern_from_counts(Counts::new(1, 1), false).unwrap();
        let z = satellite_report(&zero, &k).unwrap();
        assert_eq!((z.euler, z.fibred), (zero.euler_pattern, false));
        assert_eq!(z.alexander, Some(LaurentPolynomial::constant(1)));
    }

    #[test]
    fn trivial_companion_rejected() {
        assert_eq!(
            CompanionKnot::new(0, true, None),
            Err(SurfaceError::TrivialCompanion)
        );
    }

    proptest! {
        #[test]
        fn summary_is_symmetric(p in 0u32..50, m in 0u32..50) {
            prop_assume!(p + m > 0);
            prop_assert_eq!(
                surface_summary(Counts::new(p, m)).unwrap(),
                surface_summary(Counts::new(m, p)).unwrap()
            );
        }

        #[test]
        fn chi_identity(p in 0u32..50, m in 0u32..50) {
            prop_assume!(p + m > 0);
            let pattern = pattern_from_counts(Counts::new(p, m), false).unwrap();
            prop_assert_eq!(chi_l3(&pattern), surface_summary(Counts::new(p, m)).unwrap().euler);
        }

        #[test]
        fn satellite_euler_is_odd(p in 0u32..20, m in 0u32..20, g in 1u32..5) {
            prop_assume!(p + m > 0);
            let pattern = pattern_from_counts(Counts::new(p, m), false).unwrap();
            let k = CompanionKnot::new(g, false, None).unwrap();
            let r = satellite_report(&pattern, &k).unwrap();
            prop_assert!(r.euler % 2 != 0);
            prop_assert_eq!(i64::from(r.genus), (1 - r.euler) / 2);
        }
    }
}
