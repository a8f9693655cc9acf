//! Continuous-time walk evolution and dense parameter scans.

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use crate::csv::CsvTable;
use crate::error::{Error, Result};
use crate::grid::{linspace, phase_grid, validate_axis};
use crate::hamiltonian::HamiltonianFamily;
use crate::linalg::{
    check_site, hermitian_eigendecompose, spectral_propagator, ComplexMatrix, HermitianOperator, SpectralDecomposition,
    StateVector,
};
use crate::scalar::Real;

/// A Hamiltonian together with its cached spectral decomposition.
#[derive(Debug, Clone)]
pub struct Walk<T> {
    decomposition: SpectralDecomposition<T>,
}

impl<T: Real> Walk<T> {
    pub fn new(h: &HermitianOperator<T>) -> Result<Self> {
        Ok(Self { decomposition: hermitian_eigendecompose(h)? })
    }

    pub fn dim(&self) -> usize {
        self.decomposition.dim()
    }

    pub fn decomposition(&self) -> &SpectralDecomposition<T> {
        &self.decomposition
    }

    pub fn propagator(&self, t: T) -> ComplexMatrix<T> {
        spectral_propagator(&self.decomposition, t)
    }

    /// `⟨j|e^{−iHt}|k⟩`, 1-based sites.
    pub fn amplitude(&self, j: usize, k: usize, t: T) -> Result<Complex<T>> {
        check_site(j, self.dim())?;
        check_site(k, self.dim())?;
        check_time(t)?;
        Ok(self.decomposition.propagator_entry(j - 1, k - 1, t))
    }

    /// `|⟨j|e^{−iHt}|k⟩|²`
    pub fn probability(&self, j: usize, k: usize, t: T) -> Result<T> {
        Ok(self.amplitude(j, k, t)?.norm_sqr())
    }

    /// `⟨bra|e^{−iHt}|ket⟩`
    pub fn overlap(&self, bra: &StateVector<T>, ket: &StateVector<T>, t: T) -> Result<Complex<T>> {
        check_time(t)?;
        let evolved = ket.evolve(&self.propagator(t))?;
        if bra.dim() != evolved.dim() {
            return Err(Error::DimensionMismatch { expected: evolved.dim(), actual: bra.dim() });
        }
        Ok(bra.inner(&evolved))
    }
}

fn check_time<T: Real>(t: T) -> Result<()> {
    if !t.is_finite() {
        return Err(Error::InvalidParameter("time must be finite".into()));
    }
    Ok(())
}

/// `⟨j|e^{−iHt}|k⟩` for 1-based sites.
pub fn transition_amplitude<T: Real>(h: &HermitianOperator<T>, j: usize, k: usize, t: T) -> Result<Complex<T>> {
    check_site(j, h.dim())?;
    check_site(k, h.dim())?;
    Walk::new(h)?.amplitude(j, k, t)
}

/// `|⟨j|e^{−iHt}|k⟩|²` for 1-based sites.
pub fn transition_probability<T: Real>(h: &HermitianOperator<T>, j: usize, k: usize, t: T) -> Result<T> {
    Ok(transition_amplitude(h, j, k, t)?.norm_sqr())
}

/// Time, loop-phase and self-energy axes of a scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanGrid<T> {
    pub t: Vec<T>,
    pub theta: Vec<T>,
    pub gamma: Vec<T>,
}

impl<T: Real> ScanGrid<T> {
    /// 3001 times on `[0, 30]`, 400 phases on `[0, 2π)`, `γ = 0`.
    pub fn router_default() -> Self {
        Self { t: linspace(T::zero(), T::lit(30.0), 3001), theta: phase_grid(400), gamma: vec![T::zero()] }
    }

    pub fn validate(&self) -> Result<()> {
        validate_axis("t", &self.t)?;
        validate_axis("theta", &self.theta)?;
        validate_axis("gamma", &self.gamma)
    }

    pub fn n_points(&self) -> usize {
        self.t.len() * self.theta.len() * self.gamma.len()
    }
}

/// A named coordinate axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis<T> {
    pub name: String,
    pub values: Vec<T>,
}

/// A named value grid laid out row-major over `(t, θ, γ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedGrid<T> {
    pub name: String,
    pub data: Vec<T>,
}

/// Dense probabilities over a `(t, θ, γ)` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult<T> {
    pub axes: [Axis<T>; 3],
    pub values: Vec<NamedGrid<T>>,
    pub observables: Vec<(usize, usize)>,
    pub fingerprint: String,
}

impl<T: Real> ScanResult<T> {
    pub fn shape(&self) -> (usize, usize, usize) {
        (self.axes[0].values.len(), self.axes[1].values.len(), self.axes[2].values.len())
    }

    #[inline]
    pub fn flat_index(&self, it: usize, itheta: usize, igamma: usize) -> usize {
        let (_, nth, ng) = self.shape();
        (it * nth + itheta) * ng + igamma
    }

    pub fn grid(&self, name: &str) -> Option<&NamedGrid<T>> {
        self.values.iter().find(|g| g.name == name)
    }

    pub fn value(&self, name: &str, it: usize, itheta: usize, igamma: usize) -> Option<T> {
        let idx = self.flat_index(it, itheta, igamma);
        self.grid(name).map(|g| g.data[idx])
    }

    /// Largest probability in any observable grid.
    pub fn max_probability(&self) -> T {
        self.values.iter().filter(|g| g.name != "sum").flat_map(|g| g.data.iter().copied()).fold(T::zero(), T::max)
    }

    /// Rows in lexicographic `(t, θ[, γ])` order; the γ column appears only for multi-point γ axes.
    pub fn to_table(&self) -> CsvTable {
        let with_gamma = self.axes[2].values.len() > 1;
        let mut header: Vec<String> = vec!["t".into(), "theta".into()];
        if with_gamma {
            header.push("gamma".into());
        }
        header.extend(self.values.iter().map(|g| g.name.clone()));
        let mut table = CsvTable::new(header);
        let (nt, nth, ng) = self.shape();
        let f = |x: T| x.to_f64().unwrap_or(f64::NAN);
        for it in 0..nt {
            for ith in 0..nth {
                for ig in 0..ng {
                    let idx = self.flat_index(it, ith, ig);
                    let mut row = vec![f(self.axes[0].values[it]), f(self.axes[1].values[ith])];
                    if with_gamma {
                        row.push(f(self.axes[2].values[ig]));
                    }
                    row.extend(self.values.iter().map(|g| f(g.data[idx])));
                    table.push(row);
                }
            }
        }
        table
    }
}

/// Column name for the `j → k` observable, e.g. `p15`; separated as `p12_3` once a label has two digits.
pub fn observable_name(j: usize, k: usize) -> String {
    if j < 10 && k < 10 {
        format!("p{j}{k}")
    } else {
        format!("p{j}_{k}")
    }
}

/// Evaluates `|⟨j|e^{−iH(θ,γ)t}|k⟩|²` for every observable on the grid.
///
/// One diagonalization per `(θ, γ)` column is shared by every time point; columns
/// run in parallel but each is a pure function of its inputs, so the output is
/// identical to sequential evaluation. A `sum` grid is appended when more than one
/// observable is requested.
pub fn scan<T, F>(family: &F, grid: &ScanGrid<T>, observables: &[(usize, usize)]) -> Result<ScanResult<T>>
where
    T: Real,
    F: HamiltonianFamily<T> + ?Sized,
{
    grid.validate()?;
    if observables.is_empty() {
        return Err(Error::InvalidGrid("no observables requested".into()));
    }
    let dim = family.dim();
    for &(j, k) in observables {
        check_site(j, dim)?;
        check_site(k, dim)?;
    }

    let (nt, nth, ng) = (grid.t.len(), grid.theta.len(), grid.gamma.len());
    let n_obs = observables.len();
    let columns: Vec<(usize, usize)> = (0..nth).flat_map(|a| (0..ng).map(move |b| (a, b))).collect();

    let column_values: Vec<Vec<T>> = columns
        .par_iter()
        .map(|&(ith, ig)| -> Result<Vec<T>> {
            let h = family.hamiltonian(grid.theta[ith], grid.gamma[ig])?;
            let d = hermitian_eigendecompose(&h)?;
            let v = d.eigenvectors();
            let weights: Vec<Vec<Complex<T>>> = observables
                .iter()
                .map(|&(j, k)| (0..dim).map(|n| v[(j - 1, n)] * v[(k - 1, n)].conj()).collect())
                .collect();
            let mut out = Vec::with_capacity(nt * n_obs);
            let mut phases = vec![Complex::zero(); dim];
            for &t in &grid.t {
                for (p, &e) in phases.iter_mut().zip(d.eigenvalues()) {
                    *p = Complex::from_polar(T::one(), -e * t);
                }
                for w in &weights {
                    let amp = w.iter().zip(&phases).fold(Complex::zero(), |acc, (a, b)| acc + *a * *b);
                    out.push(amp.norm_sqr());
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;

    let total = nt * nth * ng;
    let mut values: Vec<NamedGrid<T>> = observables
        .iter()
        .map(|&(j, k)| NamedGrid { name: observable_name(j, k), data: vec![T::zero(); total] })
        .collect();
    for (col, &(ith, ig)) in columns.iter().enumerate() {
        let src = &column_values[col];
        for it in 0..nt {
            let idx = (it * nth + ith) * ng + ig;
            for (o, g) in values.iter_mut().enumerate() {
                g.data[idx] = src[it * n_obs + o];
            }
        }
    }
    if n_obs > 1 {
        let sum = (0..total).map(|i| values.iter().fold(T::zero(), |acc, g| acc + g.data[i])).collect();
        values.push(NamedGrid { name: "sum".into(), data: sum });
    }

    Ok(ScanResult {
        axes: [
            Axis { name: "t".into(), values: grid.t.clone() },
            Axis { name: "theta".into(), values: grid.theta.clone() },
            Axis { name: "gamma".into(), values: grid.gamma.clone() },
        ],
        values,
        observables: observables.to_vec(),
        fingerprint: format!("{} grid={}x{}x{}", family.describe(), nt, nth, ng),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::hamiltonian::{build_hamiltonian, ChiralSpec};

    fn router_h() -> HermitianOperator<f64> {
        let fam = ChiralSpec::new(Graph::router()).loop_family(&[2, 3, 4]).unwrap();
        fam.hamiltonian(std::f64::consts::FRAC_PI_2, 0.0).unwrap()
    }

    #[test]
    fn time_zero_gives_kronecker_delta() {
        let h = router_h();
        for j in 1..=6 {
            for k in 1..=6 {
                let a = transition_amplitude(&h, j, k, 0.0).unwrap();
                let want = if j == k { 1.0 } else { 0.0 };
                assert!((a - Complex::new(want, 0.0)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn rows_conserve_probability() {
        let walk = Walk::new(&router_h()).unwrap();
        let s: f64 = (1..=6).map(|k| walk.probability(1, k, 7.3).unwrap()).sum();
        assert!((s - 1.0).abs() < 1e-10);
    }

    #[test]
    fn site_errors() {
        let h = router_h();
        assert_eq!(transition_amplitude(&h, 0, 1, 1.0), Err(Error::SiteOutOfRange { site: 0, dim: 6 }));
        assert_eq!(transition_probability(&h, 1, 7, 1.0), Err(Error::SiteOutOfRange { site: 7, dim: 6 }));
        assert!(transition_amplitude(&h, 1, 2, f64::INFINITY).is_err());
    }

    #[test]
    fn single_point_scan_is_delta() {
        let fam = ChiralSpec::new(Graph::router()).loop_family(&[2, 3, 4]).unwrap();
        let grid = ScanGrid::<f64> { t: vec![0.0], theta: vec![0.0], gamma: vec![0.0] };
        let r = scan(&fam, &grid, &[(1, 1), (1, 5)]).unwrap();
        assert!((r.value("p11", 0, 0, 0).unwrap() - 1.0).abs() < 1e-13);
        assert!(r.value("p15", 0, 0, 0).unwrap().abs() < 1e-13);
        assert!((r.value("sum", 0, 0, 0).unwrap() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn scan_rejects_bad_grids() {
        let fam = ChiralSpec::<f64>::new(Graph::router()).loop_family(&[2, 3, 4]).unwrap();
        let empty = ScanGrid { t: vec![], theta: vec![0.0], gamma: vec![0.0] };
        assert!(matches!(scan(&fam, &empty, &[(1, 5)]), Err(Error::InvalidGrid(_))));
        let nan = ScanGrid { t: vec![0.0, f64::NAN], theta: vec![0.0], gamma: vec![0.0] };
        assert!(matches!(scan(&fam, &nan, &[(1, 5)]), Err(Error::InvalidGrid(_))));
        let ok = ScanGrid { t: vec![0.0], theta: vec![0.0], gamma: vec![0.0] };
        assert!(matches!(scan(&fam, &ok, &[]), Err(Error::InvalidGrid(_))));
        assert!(matches!(scan(&fam, &ok, &[(1, 9)]), Err(Error::SiteOutOfRange { .. })));
    }

    #[test]
    fn scan_matches_pointwise_probabilities() {
        let fam = ChiralSpec::new(Graph::router()).loop_family(&[2, 3, 4]).unwrap();
        let grid = ScanGrid::<f64> { t: linspace(0.0, 5.0, 11), theta: phase_grid(8), gamma: vec![-0.5, 0.0, 1.5] };
        let r = scan(&fam, &grid, &[(1, 5), (1, 6), (2, 4)]).unwrap();
        for (it, &t) in grid.t.iter().enumerate() {
            for (ith, &th) in grid.theta.iter().enumerate() {
                for (ig, &g) in grid.gamma.iter().enumerate() {
                    let h = build_hamiltonian(&fam.spec_at(th, g).unwrap());
                    let p = transition_probability(&h, 2, 4, t).unwrap();
                    assert!((r.value("p24", it, ith, ig).unwrap() - p).abs() < 1e-12);
                }
            }
        }
        let table = r.to_table();
        assert_eq!(table.header, ["t", "theta", "gamma", "p15", "p16", "p24", "sum"]);
        assert_eq!(table.rows.len(), grid.t.len() * grid.theta.len() * grid.gamma.len());
    }

    #[test]
    fn observable_names() {
        assert_eq!(observable_name(1, 5), "p15");
        assert_eq!(observable_name(12, 3), "p12_3");
    }
}
