//! Symmetric lambda-interval arithmetic. Every interval the selection layer
//! compares is a nonnegative multiple of one symbolic lambda > 0, so ordering
//! by inclusion reduces to ordering the magnitude coefficients and no numeric
//! lambda is ever chosen. General (asymmetric) endpoint arithmetic is kept
//! only for property testing against corner enumeration.

use std::cmp::Ordering;
use std::fmt;

use crate::rat::{l1_norm, ArithError, ExtRat, Rat};

/// Classification of an (x,h)-linear function: h-bounded means all x
/// coefficients are <= 0 and the h coefficient is > 0, so the function is
/// dominated by its h term on the nonnegative orthant.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
pub enum HClass {
    #[serde(rename = "B")]
    Bounded,
    #[serde(rename = "U")]
    Unbounded,
}

impl HClass {
    /// The evaluation domain a function of this class is imaged over.
    pub fn flavor(self) -> DomainFlavor {
        match self {
            HClass::Bounded => DomainFlavor::Pinned,
            HClass::Unbounded => DomainFlavor::Full,
        }
    }
}

impl fmt::Display for HClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HClass::Bounded => f.write_str("B"),
            HClass::Unbounded => f.write_str("U"),
        }
    }
}

/// The two lambda-parametrized evaluation domains: `Pinned` holds every
/// remaining x coordinate at [0,0] with h in [-lambda, lambda]; `Full` puts
/// every coordinate in [-lambda, lambda].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DomainFlavor {
    Pinned,
    Full,
}

/// A symmetric interval [-m*lambda, m*lambda] represented by its nonnegative
/// magnitude coefficient. Inclusion ordering coincides with magnitude order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntervalMag {
    mag: ExtRat,
}

impl IntervalMag {
    pub fn new(mag: ExtRat) -> Self {
        if let ExtRat::Finite(r) = &mag {
            assert!(!r.is_negative(), "interval magnitude must be nonnegative");
        }
        assert!(mag != ExtRat::NegInf, "interval magnitude must be nonnegative");
        IntervalMag { mag }
    }

    pub fn finite(mag: Rat) -> Self {
        IntervalMag::new(ExtRat::Finite(mag))
    }

    pub fn magnitude(&self) -> &ExtRat {
        &self.mag
    }
}

impl PartialOrd for IntervalMag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IntervalMag {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mag.cmp(&other.mag)
    }
}

impl fmt::Display for IntervalMag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[-{m}L, {m}L]", m = self.mag)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntervalError {
    /// Endpoints with lo > hi do not form an interval.
    EmptyInterval,
    Arith(ArithError),
}

impl fmt::Display for IntervalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntervalError::EmptyInterval => f.write_str("invalid interval: lo > hi"),
            IntervalError::Arith(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for IntervalError {}

impl From<ArithError> for IntervalError {
    fn from(e: ArithError) -> Self {
        IntervalError::Arith(e)
    }
}

fn check_valid(lo: &ExtRat, hi: &ExtRat) -> Result<(), IntervalError> {
    if lo > hi {
        return Err(IntervalError::EmptyInterval);
    }
    Ok(())
}

/// `alpha * [lo, hi]`: endpoints scale, swapping when alpha < 0.
pub fn general_scale(
    endpoints: (&ExtRat, &ExtRat),
    alpha: &Rat,
) -> Result<(ExtRat, ExtRat), IntervalError> {
    let (lo, hi) = endpoints;
    check_valid(lo, hi)?;
    let a = lo.checked_scale(alpha)?;
    let b = hi.checked_scale(alpha)?;
    if alpha.is_negative() {
        Ok((b, a))
    } else {
        Ok((a, b))
    }
}

/// Endpointwise sum of two intervals.
pub fn general_add(
    i1: (&ExtRat, &ExtRat),
    i2: (&ExtRat, &ExtRat),
) -> Result<(ExtRat, ExtRat), IntervalError> {
    check_valid(i1.0, i1.1)?;
    check_valid(i2.0, i2.1)?;
    Ok((i1.0.checked_add(i2.0)?, i1.1.checked_add(i2.1)?))
}

/// Range of `sum_j alpha_j * I_j` over a family of intervals: negative
/// coefficients pull from the opposite endpoint.
pub fn linear_form_range(
    terms: &[(Rat, (ExtRat, ExtRat))],
) -> Result<(ExtRat, ExtRat), IntervalError> {
    let mut lo = ExtRat::zero();
    let mut hi = ExtRat::zero();
    for (alpha, (u, v)) in terms {
        check_valid(u, v)?;
        let (slo, shi) = if alpha.is_negative() {
            (v.checked_scale(alpha)?, u.checked_scale(alpha)?)
        } else {
            (u.checked_scale(alpha)?, v.checked_scale(alpha)?)
        };
        lo = lo.checked_add(&slo)?;
        hi = hi.checked_add(&shi)?;
    }
    Ok((lo, hi))
}

/// Image of an (x,h)-linear function over the flavored lambda-domain, as a
/// symmetric-interval magnitude: the full box sums every |coefficient|, the
/// pinned domain sees only the h term.
pub fn linear_image(x_coeffs: &[Rat], h_coeff: &Rat, flavor: DomainFlavor) -> IntervalMag {
    let mag = match flavor {
        DomainFlavor::Pinned => h_coeff.abs(),
        DomainFlavor::Full => l1_norm(x_coeffs) + h_coeff.abs(),
    };
    IntervalMag::finite(mag)
}

/// Minimum magnitude of a nonempty family, with the full set of keys
/// attaining it (the arg-set feeds the tie-breaking stage).
pub fn min_mags<K: Clone>(family: &[(K, IntervalMag)]) -> Option<(IntervalMag, Vec<K>)> {
    extremum(family, Ordering::Less)
}

/// Mirror of [`min_mags`].
pub fn max_mags<K: Clone>(family: &[(K, IntervalMag)]) -> Option<(IntervalMag, Vec<K>)> {
    extremum(family, Ordering::Greater)
}

fn extremum<K: Clone>(
    family: &[(K, IntervalMag)],
    want: Ordering,
) -> Option<(IntervalMag, Vec<K>)> {
    let mut best: Option<&IntervalMag> = None;
    for (_, mag) in family {
        match best {
            None => best = Some(mag),
            Some(b) if mag.cmp(b) == want => best = Some(mag),
            _ => {}
        }
    }
    let best = best?.clone();
    let keys = family
        .iter()
        .filter(|(_, m)| *m == best)
        .map(|(k, _)| k.clone())
        .collect();
    Some((best, keys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::Rat;

    fn fin(s: &str) -> ExtRat {
        ExtRat::Finite(s.parse().unwrap())
    }

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn scale_examples() {
        let got = general_scale((&fin("1"), &fin("2")), &r("3")).unwrap();
        assert_eq!(got, (fin("3"), fin("6")));
        let got = general_scale((&fin("1"), &fin("2")), &r("-1")).unwrap();
        assert_eq!(got, (fin("-2"), fin("-1")));
        let got = general_scale((&fin("-5"), &fin("5")), &r("-2")).unwrap();
        assert_eq!(got, (fin("-10"), fin("10")));
        assert_eq!(
            general_scale((&fin("2"), &fin("1")), &r("1")),
            Err(IntervalError::EmptyInterval)
        );
    }

    #[test]
    fn add_examples() {
        let got = general_add((&fin("0"), &fin("1")), (&fin("2"), &fin("3"))).unwrap();
        assert_eq!(got, (fin("2"), fin("4")));
        let got = general_add((&fin("0"), &fin("0")), (&fin("-7"), &fin("9"))).unwrap();
        assert_eq!(got, (fin("-7"), fin("9")));
        assert_eq!(
            general_add((&ExtRat::PosInf, &ExtRat::PosInf), (&ExtRat::NegInf, &fin("0"))),
            Err(IntervalError::Arith(crate::rat::ArithError::InfMinusInf))
        );
    }

    #[test]
    fn symmetric_addition_closes() {
        // magnitudes 2 and 3 add to magnitude 5
        let a = (fin("-2"), fin("2"));
        let b = (fin("-3"), fin("3"));
        let got = general_add((&a.0, &a.1), (&b.0, &b.1)).unwrap();
        assert_eq!(got, (fin("-5"), fin("5")));
    }

    #[test]
    fn linear_image_pinned_and_full() {
        // -x2 + 3500 h over the pinned domain
        let f = [r("0"), r("-1"), r("0"), r("0")];
        assert_eq!(
            linear_image(&f, &r("3500"), DomainFlavor::Pinned),
            IntervalMag::finite(r("3500"))
        );
        // y1 - 7y2 - 8y3 - 5y5 + 9h over the full box
        let g = [r("1"), r("-7"), r("-8"), r("0"), r("-5")];
        assert_eq!(
            linear_image(&g, &r("9"), DomainFlavor::Full),
            IntervalMag::finite(r("30"))
        );
        // -(15/51) x2 + (47/102) h over the pinned domain
        let h = [r("0"), r("-15/51"), r("0"), r("0")];
        assert_eq!(
            linear_image(&h, &r("47/102"), DomainFlavor::Pinned),
            IntervalMag::finite(r("47/102"))
        );
    }

    #[test]
    fn min_mags_keeps_full_arg_set() {
        let fam = vec![
            ((1usize, 3usize), IntervalMag::finite(r("3500"))),
            ((2, 3), IntervalMag::finite(r("3500"))),
            ((3, 3), IntervalMag::finite(r("3500"))),
        ];
        let (m, keys) = min_mags(&fam).unwrap();
        assert_eq!(m, IntervalMag::finite(r("3500")));
        assert_eq!(keys, vec![(1, 3), (2, 3), (3, 3)]);

        let fam = vec![
            ((3usize, 4usize), IntervalMag::finite(r("30"))),
            ((1, 1), IntervalMag::finite(r("45"))),
        ];
        let (m, keys) = min_mags(&fam).unwrap();
        assert_eq!(m, IntervalMag::finite(r("30")));
        assert_eq!(keys, vec![(3, 4)]);

        let fam = vec![(7usize, IntervalMag::finite(r("5")))];
        let (m, keys) = min_mags(&fam).unwrap();
        assert_eq!(m, IntervalMag::finite(r("5")));
        assert_eq!(keys, vec![7]);

        assert!(min_mags::<usize>(&[]).is_none());
    }

    #[test]
    fn max_mags_examples() {
        let fam = vec![
            ((1usize, 3usize), IntervalMag::finite(r("9/50"))),
            ((2, 3), IntervalMag::finite(r("13/30"))),
            ((3, 3), IntervalMag::finite(r("47/102"))),
        ];
        let (m, keys) = max_mags(&fam).unwrap();
        assert_eq!(m, IntervalMag::finite(r("47/102")));
        assert_eq!(keys, vec![(3, 3)]);

        let fam = vec![(0usize, IntervalMag::finite(r("2")))];
        assert_eq!(max_mags(&fam).unwrap().1, vec![0]);

        let fam = vec![
            (0usize, IntervalMag::finite(r("2"))),
            (1, IntervalMag::finite(r("2"))),
        ];
        let (_, keys) = max_mags(&fam).unwrap();
        assert_eq!(keys, vec![0, 1]);
    }

    #[test]
    fn pinned_image_never_exceeds_full() {
        let f = [r("3"), r("-2/7")];
        let h = r("-5/3");
        assert!(
            linear_image(&f, &h, DomainFlavor::Pinned)
                <= linear_image(&f, &h, DomainFlavor::Full)
        );
    }
}
