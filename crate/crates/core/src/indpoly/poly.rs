use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense univariate polynomial in `t` with arbitrary-precision integer
/// coefficients; `coeffs[k]` is the coefficient of `t^k`.
///
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    /// The monomial `t^k`.
    pub fn t_pow(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        Self { coeffs: c }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `t^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self { coeffs: c }
    }

    /// Coefficients as decimal strings, the JSON rendering.
    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }

    pub fn from_decimal_strings(items: &[String]) -> Result<Self> {
        items
            .iter()
            .map(|s| {
                s.parse::<BigInt>()
                    .map_err(|_| Error::Domain(format!("not an integer coefficient: `{s}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPolynomial::new(c)
    }
}

/// Renders `c0 + c1*t + c2*t^2 + ...`, skipping zero terms. Unit
/// coefficients print without the `1*` prefix, so `1 + t` rather than `1 + 1*t`.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            if k == 0 {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{magnitude}*{var}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_decimal_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        Self::from_decimal_strings(&items).map_err(serde::de::Error::custom)
    }
}

/// Unimodality verdict and mode of a polynomial with non-negative coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeAnalysis {
    pub is_unimodal: bool,
    /// The unique `i` with `a_{i-1} < a_i >= a_{i+1} >= ... >= a_end`
    /// (`a_{-1} = 0`); present iff unimodal.
    pub mode: Option<usize>,
}

/// Decides unimodality and finds the mode.
///
/// For a unimodal sequence the mode is the first index attaining the maximum.
pub fn mode_analysis(p: &IntPolynomial) -> Result<ModeAnalysis> {
    if p.is_zero() {
        return Err(Error::Domain("mode of the zero polynomial is undefined".into()));
    }
    if let Some(k) = p.coeffs().iter().position(Signed::is_negative) {
        return Err(Error::Domain(format!(
            "coefficient of t^{k} is negative; unimodality needs non-negative coefficients"
        )));
    }
    let c = p.coeffs();
    let max = c.iter().max().expect("nonzero polynomial");
    let peak = c.iter().position(|x| x == max).expect("max is attained");
    let rising = c[..=peak].windows(2).all(|w| w[0] <= w[1]);
    let falling = c[peak..].windows(2).all(|w| w[0] >= w[1]);
    let is_unimodal = rising && falling;
    Ok(ModeAnalysis {
        is_unimodal,
        mode: is_unimodal.then_some(peak),
    })
}

/// Sums two unimodal polynomials whose modes differ by at most one; the sum
/// is unimodal with mode in `{min, min + 1}` of the two modes.
pub fn check_unimodal_sum(f: &IntPolynomial, g: &IntPolynomial) -> Result<ModeAnalysis> {
    let mf = unimodal_mode(f, "f")?;
    let mg = unimodal_mode(g, "g")?;
    if mf.abs_diff(mg) > 1 {
        return Err(Error::Domain(format!(
            "modes {mf} and {mg} differ by more than one"
        )));
    }
    let sum = mode_analysis(&(f + g))?;
    let low = mf.min(mg);
    match sum.mode {
        Some(m) if sum.is_unimodal && (m == low || m == low + 1) => Ok(sum),
        _ => Err(Error::Domain(format!(
            "sum of unimodal polynomials with modes {mf}, {mg} is not unimodal with mode in {{{low}, {}}}",
            low + 1
        ))),
    }
}

fn unimodal_mode(p: &IntPolynomial, name: &str) -> Result<usize> {
    let a = mode_analysis(p)?;
    a.mode
        .ok_or_else(|| Error::Domain(format!("{name} = {p} is not unimodal")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(p(&[1, 2, 0, 0]).coeffs().len(), 2);
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[1, 0, 3]).degree(), Some(2));
        assert_eq!(IntPolynomial::t_pow(3), p(&[0, 0, 0, 1]));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(&p(&[1, 2]) + &p(&[1, 1, 1]), p(&[2, 3, 1]));
        assert_eq!(&p(&[1, 1]) * &p(&[1, 1]), p(&[1, 2, 1]));
        assert_eq!(&p(&[1, 2]) * &IntPolynomial::zero(), IntPolynomial::zero());
        assert_eq!(p(&[1, 2]).shift(2), p(&[0, 0, 1, 2]));
        assert_eq!(&p(&[1, -1]) + &p(&[-1, 1]), IntPolynomial::zero());
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[1, 1]).to_string(), "1 + t");
        assert_eq!(p(&[1, 4, 3]).to_string(), "1 + 4*t + 3*t^2");
        assert_eq!(p(&[0, 0, 5]).to_string(), "5*t^2");
        assert_eq!(p(&[1, 0, -2]).to_string(), "1 - 2*t^2");
        assert_eq!(p(&[-1]).to_string(), "-1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(p(&[1]).to_string(), "1");
    }

    #[test]
    fn json_is_decimal_strings() {
        let big = IntPolynomial::new(vec![BigInt::from(1), BigInt::from(10).pow(30)]);
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(s, r#"["1","1000000000000000000000000000000"]"#);
        let back: IntPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, big);
        assert!(serde_json::from_str::<IntPolynomial>(r#"["x"]"#).is_err());
    }

    #[test]
    fn modes() {
        let a = mode_analysis(&p(&[1, 4, 3])).unwrap();
        assert_eq!(a, ModeAnalysis { is_unimodal: true, mode: Some(1) });
        assert_eq!(mode_analysis(&p(&[1, 1, 2, 1])).unwrap().mode, Some(2));
        let a = mode_analysis(&p(&[1, 3, 2, 3])).unwrap();
        assert_eq!(a, ModeAnalysis { is_unimodal: false, mode: None });
        // plateau: the mode is the first maximal index
        assert_eq!(mode_analysis(&p(&[1, 2, 2, 1])).unwrap().mode, Some(1));
        assert_eq!(mode_analysis(&p(&[1, 1])).unwrap().mode, Some(0));
        assert_eq!(mode_analysis(&p(&[3])).unwrap().mode, Some(0));
        assert_eq!(mode_analysis(&p(&[0, 0, 1])).unwrap().mode, Some(2));
        assert!(mode_analysis(&IntPolynomial::zero()).is_err());
        assert!(mode_analysis(&p(&[1, -1])).is_err());
    }

    #[test]
    fn unimodal_sums() {
        let s = check_unimodal_sum(&p(&[1, 2]), &p(&[1, 1, 1])).unwrap();
        assert_eq!(s.mode, Some(1));
        let f = p(&[1, 3, 1]);
        assert_eq!(check_unimodal_sum(&f, &f).unwrap().mode, Some(1));
        assert!(matches!(
            check_unimodal_sum(&p(&[5, 1, 1]), &p(&[1, 1, 5])),
            Err(Error::Domain(_))
        ));
        assert!(check_unimodal_sum(&p(&[1, 3, 2, 3]), &p(&[1])).is_err());
    }
}
