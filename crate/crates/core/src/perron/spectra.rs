use num_traits::{One, Signed};

use crate::ratmath::{MathError, Rational, RationalMatrix, SpectralVector};

/// Vandermonde matrix with rows of increasing powers: entry `(i, j)` is
/// `spectrum[j]^i`. Repeated values make it singular.
pub fn build_vandermonde(spectrum: &SpectralVector) -> Result<RationalMatrix, MathError> {
    let n = spectrum.len();
    for a in 0..n {
        if spectrum[a + 1..].contains(&spectrum[a]) {
            return Err(MathError::Singular);
        }
    }
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n);
    let mut power = vec![Rational::one(); n];
    for _ in 0..n {
        rows.push(power.clone());
        for (p, x) in power.iter_mut().zip(spectrum.iter()) {
            *p *= x;
        }
    }
    RationalMatrix::from_rows(rows)
}

/// Exactly one positive entry.
pub fn is_suleimanova(spectrum: &SpectralVector) -> bool {
    spectrum.iter().filter(|x| x.is_positive()).count() == 1
}
