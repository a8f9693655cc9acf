//! Golden-section refinement and grid search.

use crate::scalar::Real;

/// Maximizes a unimodal `f` on `[lo, hi]` until the bracket is narrower than `tol`.
///
/// Returns `(x, f(x))` for the best point evaluated, endpoints included.
pub fn golden_section_max<T: Real, F: FnMut(T) -> T>(mut f: F, lo: T, hi: T, tol: T) -> (T, T) {
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    if b - a <= tol {
        let x = (a + b) / T::lit(2.0);
        return (x, f(x));
    }
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let (fa, fb) = (f(a), f(b));
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    [(lo, fa), (hi, fb), (x1, f1), (x2, f2)]
        .into_iter()
        .fold((x1, f1), |best, cand| if cand.1 > best.1 { cand } else { best })
}

/// Minimizes `f` on `[lo, hi]`.
pub fn golden_section_min<T: Real, F: FnMut(T) -> T>(mut f: F, lo: T, hi: T, tol: T) -> (T, T) {
    let (x, v) = golden_section_max(|x| -f(x), lo, hi, tol);
    (x, -v)
}

/// Index and value of the largest sample; the first one wins ties.
pub fn argmax<T: Real>(values: &[T]) -> Option<(usize, T)> {
    values.iter().copied().enumerate().fold(None, |best, (i, v)| match best {
        Some((_, bv)) if bv >= v => best,
        _ => Some((i, v)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_peak() {
        let (x, v) = golden_section_max(|x: f64| -(x - 1.3).powi(2) + 2.0, 0.0, 4.0, 1e-9);
        assert!((x - 1.3).abs() < 1e-7);
        assert!((v - 2.0).abs() < 1e-15);
    }

    #[test]
    fn endpoint_maximum_is_returned() {
        let (x, _) = golden_section_max(|x: f64| x, 0.0, 1.0, 1e-6);
        assert_eq!(x, 1.0);
    }

    #[test]
    fn degenerate_bracket() {
        let (x, v) = golden_section_max(|x: f64| x * x, 2.0, 2.0, 1e-6);
        assert_eq!((x, v), (2.0, 4.0));
    }

    #[test]
    fn minimum_of_cosine() {
        let (x, v) = golden_section_min(|x: f64| x.cos(), 2.0, 4.0, 1e-10);
        assert!((x - std::f64::consts::PI).abs() < 1e-7);
        assert!((v + 1.0).abs() < 1e-15);
    }

    #[test]
    fn argmax_first_wins() {
        assert_eq!(argmax(&[1.0, 3.0, 3.0, 2.0]), Some((1, 3.0)));
        assert_eq!(argmax::<f64>(&[]), None);
    }
}
