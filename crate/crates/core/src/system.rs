//! Tridiagonal pairs and systems: recognition, shape, relatives and the
//! parameters of the tridiagonal relations.

use serde::Serialize;

use crate::error::{Error, Operator, Rejection, Result};
use crate::linalg::{eigenvalues_in_field, lagrange_idempotents, rank, Subspace};
use crate::matrix::Matrix;
use crate::scalar::{Field, Scalar};

/// `(A; E_0..E_d; A*; E*_0..E*_d)` with the eigenvalue orderings fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TridiagonalSystem {
    a: Matrix,
    astar: Matrix,
    e: Vec<Matrix>,
    estar: Vec<Matrix>,
    theta: Vec<Scalar>,
    thetastar: Vec<Scalar>,
    shape: Vec<usize>,
}

impl TridiagonalSystem {
    /// Builds a system from a pair and two eigenvalue orderings, checking
    /// every axiom. Used when loading serialized systems.
    pub fn new(
        a: Matrix,
        astar: Matrix,
        theta: Vec<Scalar>,
        thetastar: Vec<Scalar>,
    ) -> Result<TridiagonalSystem> {
        check_pair_shape(&a, &astar)?;
        if theta.len() != thetastar.len() {
            return Err(Error::Rejected(Rejection::DiameterMismatch {
                d: theta.len().saturating_sub(1),
                delta: thetastar.len().saturating_sub(1),
            }));
        }
        let e = idempotents_for(&a, &theta, Operator::A)?;
        let estar = idempotents_for(&astar, &thetastar, Operator::AStar)?;
        match irreducibility(&a, &astar) {
            Irreducibility::Certified => {}
            Irreducibility::Reducible => return Err(Error::Rejected(Rejection::Reducible)),
            Irreducibility::Undetermined => {
                return Err(Error::Rejected(Rejection::IrreducibilityUndetermined))
            }
        }
        TridiagonalSystem::assemble(a, astar, e, estar, theta, thetastar)
    }

    /// Checks the block-tridiagonal conditions and computes the shape.
    fn assemble(
        a: Matrix,
        astar: Matrix,
        e: Vec<Matrix>,
        estar: Vec<Matrix>,
        theta: Vec<Scalar>,
        thetastar: Vec<Scalar>,
    ) -> Result<TridiagonalSystem> {
        if !tridiagonal_pattern(&estar, &a) {
            return Err(Error::Rejected(Rejection::NoStandardOrdering(Operator::AStar)));
        }
        if !tridiagonal_pattern(&e, &astar) {
            return Err(Error::Rejected(Rejection::NoStandardOrdering(Operator::A)));
        }
        let mut sys = TridiagonalSystem { a, astar, e, estar, theta, thetastar, shape: Vec::new() };
        sys.shape = compute_shape(&sys)?;
        Ok(sys)
    }

    pub fn field(&self) -> Field {
        self.a.field()
    }

    /// Diameter `d`.
    pub fn d(&self) -> usize {
        self.theta.len() - 1
    }

    /// Dimension of the underlying vector space.
    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn astar(&self) -> &Matrix {
        &self.astar
    }

    pub fn e(&self, i: usize) -> &Matrix {
        &self.e[i]
    }

    pub fn estar(&self, i: usize) -> &Matrix {
        &self.estar[i]
    }

    pub fn idempotents(&self) -> &[Matrix] {
        &self.e
    }

    pub fn dual_idempotents(&self) -> &[Matrix] {
        &self.estar
    }

    pub fn theta(&self) -> &[Scalar] {
        &self.theta
    }

    pub fn thetastar(&self) -> &[Scalar] {
        &self.thetastar
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.field(), self.dim())
    }

    /// True when every `ρ_i` is 1.
    pub fn is_leonard(&self) -> bool {
        self.shape.iter().all(|&r| r == 1)
    }
}

fn check_pair_shape(a: &Matrix, astar: &Matrix) -> Result<()> {
    if a.field() != astar.field() {
        return Err(Error::FieldMismatch(a.field(), astar.field()));
    }
    if !a.is_square() || !astar.is_square() || a.rows() != astar.rows() {
        return Err(Error::Dimension(format!(
            "expected square matrices of equal size, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            astar.rows(),
            astar.cols()
        )));
    }
    if a.rows() == 0 {
        return Err(Error::Dimension("empty matrices".into()));
    }
    Ok(())
}

fn idempotents_for(m: &Matrix, thetas: &[Scalar], op: Operator) -> Result<Vec<Matrix>> {
    lagrange_idempotents(m, thetas).map_err(|err| match err {
        Error::NotDiagonalizable => Error::Rejected(Rejection::NotDiagonalizable(op)),
        other => other,
    })
}

/// `E_i X E_j` vanishes iff `|i − j| > 1`.
fn tridiagonal_pattern(idem: &[Matrix], x: &Matrix) -> bool {
    let d = idem.len() - 1;
    for i in 0..=d {
        let left = &idem[i] * x;
        for j in 0..=d {
            let zero = (&left * &idem[j]).is_zero();
            let gap = i.abs_diff(j);
            if (gap > 1 && !zero) || (gap == 1 && zero) {
                return false;
            }
        }
    }
    true
}

/// Outcome of the generated-algebra test for a common invariant subspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    /// The unital algebra generated by the pair is all of `End(V)`.
    Certified,
    /// A proper nonzero invariant subspace was found.
    Reducible,
    /// The algebra is proper but no invariant subspace was exhibited.
    Undetermined,
}

/// Incrementally maintained echelon basis of flattened matrices.
struct Echelon {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl Echelon {
    fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        self.rows.push((p, v));
        true
    }
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

/// A basis of the unital algebra generated by `a` and `astar`, built from
/// words of length at most `2n²`.
pub fn generated_algebra(a: &Matrix, astar: &Matrix) -> Vec<Matrix> {
    let n = a.rows();
    let mut echelon = Echelon { rows: Vec::new() };
    let id = Matrix::identity(a.field(), n);
    echelon.insert(flatten(&id));
    let mut basis = vec![id.clone()];
    let mut frontier = vec![id];
    let cap = 2 * n * n;
    for _ in 0..cap {
        if frontier.is_empty() || basis.len() == n * n {
            break;
        }
        let mut next = Vec::new();
        for w in &frontier {
            for g in [a, astar] {
                let word = g * w;
                if echelon.insert(flatten(&word)) {
                    basis.push(word.clone());
                    next.push(word);
                }
            }
        }
        frontier = next;
    }
    basis
}

/// Decides whether `a`, `astar` share a proper nonzero invariant subspace.
pub fn irreducibility(a: &Matrix, astar: &Matrix) -> Irreducibility {
    let n = a.rows();
    let field = a.field();
    let algebra = generated_algebra(a, astar);
    if algebra.len() == n * n {
        return Irreducibility::Certified;
    }
    // Look for a witness: the orbit of a candidate vector under the algebra
    // (or, for the orthogonal complement, under its transpose).
    let mut candidates: Vec<Matrix> = (0..n)
        .map(|k| Matrix::from_fn(field, n, 1, |i, _| if i == k { field.one() } else { field.zero() }))
        .collect();
    for m in [a, astar] {
        if let Ok(spectrum) = eigenvalues_in_field(m) {
            for (_, space) in &spectrum.eigenpairs {
                for k in 0..space.dim() {
                    candidates.push(space.basis().select_columns(&[k]));
                }
            }
        }
    }
    let transposed: Vec<Matrix> = algebra.iter().map(Matrix::transpose).collect();
    for family in [&algebra, &transposed] {
        for v in &candidates {
            let images: Vec<Matrix> = family.iter().map(|x| x * v).collect();
            let refs: Vec<&Matrix> = images.iter().collect();
            let orbit = Subspace::span(&Matrix::hstack(field, n, &refs));
            if orbit.dim() < n {
                return Irreducibility::Reducible;
            }
        }
    }
    Irreducibility::Undetermined
}

/// Orders the eigenspaces of one operator so the other acts as a path:
/// `i ~ j` iff `E_i X E_j ≠ 0` or `E_j X E_i ≠ 0`. Returns the ordering that
/// starts at the lower-indexed endpoint.
fn path_ordering(idem: &[Matrix], x: &Matrix) -> Option<Vec<usize>> {
    let m = idem.len();
    if m == 1 {
        return Some(vec![0]);
    }
    let mut adj = vec![Vec::new(); m];
    for i in 0..m {
        let left = &idem[i] * x;
        for j in 0..m {
            if i != j && !(&left * &idem[j]).is_zero() {
                if !adj[i].contains(&j) {
                    adj[i].push(j);
                }
                if !adj[j].contains(&i) {
                    adj[j].push(i);
                }
            }
        }
    }
    let ends: Vec<usize> = (0..m).filter(|&i| adj[i].len() == 1).collect();
    if ends.len() != 2 || (0..m).any(|i| adj[i].len() > 2 || adj[i].is_empty()) {
        return None;
    }
    let mut order = vec![ends[0]];
    let mut prev = usize::MAX;
    let mut cur = ends[0];
    while let Some(&next) = adj[cur].iter().find(|&&k| k != prev) {
        if order.len() == m {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    (order.len() == m && cur == ends[1]).then_some(order)
}

/// Every tridiagonal system on the pair `(a, astar)`: four systems, one per
/// choice of direction for each standard ordering.
pub fn verify_pair(a: &Matrix, astar: &Matrix) -> Result<Vec<TridiagonalSystem>> {
    check_pair_shape(a, astar)?;
    let spectrum = eigenvalues_in_field(a)?;
    let spec_star = eigenvalues_in_field(astar)?;
    if !spectrum.diagonalizable {
        return Err(Error::Rejected(Rejection::NotDiagonalizable(Operator::A)));
    }
    if !spec_star.diagonalizable {
        return Err(Error::Rejected(Rejection::NotDiagonalizable(Operator::AStar)));
    }
    match irreducibility(a, astar) {
        Irreducibility::Certified => {}
        Irreducibility::Reducible => return Err(Error::Rejected(Rejection::Reducible)),
        Irreducibility::Undetermined => {
            return Err(Error::Rejected(Rejection::IrreducibilityUndetermined))
        }
    }
    let theta = spectrum.eigenvalues();
    let thetastar = spec_star.eigenvalues();
    let e = idempotents_for(a, &theta, Operator::A)?;
    let estar = idempotents_for(astar, &thetastar, Operator::AStar)?;
    let order = path_ordering(&e, astar)
        .ok_or(Error::Rejected(Rejection::NoStandardOrdering(Operator::A)))?;
    let order_star = path_ordering(&estar, a)
        .ok_or(Error::Rejected(Rejection::NoStandardOrdering(Operator::AStar)))?;
    if order.len() != order_star.len() {
        return Err(Error::Rejected(Rejection::DiameterMismatch {
            d: order.len() - 1,
            delta: order_star.len() - 1,
        }));
    }
    let reversed = |o: &[usize]| o.iter().rev().copied().collect::<Vec<_>>();
    let orders = [order.clone(), reversed(&order)];
    let orders_star = [order_star.clone(), reversed(&order_star)];
    let mut systems = Vec::with_capacity(4);
    for o in &orders {
        for os in &orders_star {
            let pick = |v: &[Matrix], o: &[usize]| o.iter().map(|&k| v[k].clone()).collect::<Vec<_>>();
            let pick_s = |v: &[Scalar], o: &[usize]| o.iter().map(|&k| v[k].clone()).collect::<Vec<_>>();
            systems.push(TridiagonalSystem::assemble(
                a.clone(),
                astar.clone(),
                pick(&e, o),
                pick(&estar, os),
                pick_s(&theta, o),
                pick_s(&thetastar, os),
            )?);
        }
    }
    Ok(systems)
}

/// `ρ_i = rank E_i`, checked against `E_{d−i}`, `E*_i`, `E*_{d−i}` and
/// unimodality.
pub fn compute_shape(sys: &TridiagonalSystem) -> Result<Vec<usize>> {
    let d = sys.d();
    let ranks = |v: &[Matrix]| v.iter().map(rank).collect::<Vec<_>>();
    let r = ranks(&sys.e);
    let rs = ranks(&sys.estar);
    for i in 0..=d {
        if r[i] != r[d - i] || r[i] != rs[i] || r[i] != rs[d - i] {
            return Err(Error::Inconsistent(format!(
                "idempotent ranks disagree at index {i}: {} {} {} {}",
                r[i],
                r[d - i],
                rs[i],
                rs[d - i]
            )));
        }
    }
    for i in 1..=d / 2 {
        if r[i - 1] > r[i] {
            return Err(Error::Inconsistent(format!("shape not unimodal at index {i}")));
        }
    }
    Ok(r)
}

/// The systems obtained by swapping or reversing the two orderings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relative {
    /// `(A*; E*_i; A; E_i)`
    Star,
    /// `(A; E_i; A*; E*_{d−i})`
    Down,
    /// `(A; E_{d−i}; A*; E*_i)`
    DownDown,
    /// `(A*; E*_{d−i}; A; E_{d−i})`
    Times,
}

pub fn relatives(sys: &TridiagonalSystem, which: Relative) -> TridiagonalSystem {
    fn rev<T: Clone>(v: &[T]) -> Vec<T> {
        v.iter().rev().cloned().collect()
    }
    let s = sys.clone();
    let (a, astar, e, estar, theta, thetastar) = match which {
        Relative::Star => (s.astar, s.a, s.estar, s.e, s.thetastar, s.theta),
        Relative::Down => (s.a, s.astar, s.e, rev(&s.estar), s.theta, rev(&s.thetastar)),
        Relative::DownDown => (s.a, s.astar, rev(&s.e), s.estar, rev(&s.theta), s.thetastar),
        Relative::Times => (s.astar, s.a, rev(&s.estar), rev(&s.e), rev(&s.thetastar), rev(&s.theta)),
    };
    TridiagonalSystem::assemble(a, astar, e, estar, theta, thetastar)
        .expect("relatives of a tridiagonal system are tridiagonal systems")
}

/// `β, γ, γ*, ϱ, ϱ*` together with the extended eigenvalues at `−1`, `d+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationParameters {
    pub beta: Scalar,
    pub gamma: Scalar,
    pub gammastar: Scalar,
    pub rho: Scalar,
    pub rhostar: Scalar,
    pub theta_m1: Scalar,
    pub theta_dp1: Scalar,
    pub thetastar_m1: Scalar,
    pub thetastar_dp1: Scalar,
}

impl RelationParameters {
    /// `θ_i` for `−1 ≤ i ≤ d+1`.
    pub fn theta_ext(&self, sys: &TridiagonalSystem, i: isize) -> Scalar {
        extended(sys.theta(), &self.theta_m1, &self.theta_dp1, i)
    }

    /// `θ*_i` for `−1 ≤ i ≤ d+1`.
    pub fn thetastar_ext(&self, sys: &TridiagonalSystem, i: isize) -> Scalar {
        extended(sys.thetastar(), &self.thetastar_m1, &self.thetastar_dp1, i)
    }
}

fn extended(seq: &[Scalar], m1: &Scalar, dp1: &Scalar, i: isize) -> Scalar {
    let d = seq.len() as isize - 1;
    match i {
        -1 => m1.clone(),
        i if i == d + 1 => dp1.clone(),
        i if (0..=d).contains(&i) => seq[i as usize].clone(),
        _ => panic!("eigenvalue index {i} out of range"),
    }
}

/// `β` forced by an eigenvalue sequence of length ≥ 4, checked for every
/// admissible index.
fn forced_beta(seq: &[Scalar], name: &str) -> Result<Scalar> {
    let d = seq.len() - 1;
    let ratio = |i: usize| (&seq[i - 2] - &seq[i + 1]) / (&seq[i - 1] - &seq[i]);
    let b1 = ratio(2);
    for i in 3..d {
        if ratio(i) != b1 {
            return Err(Error::Contradiction(format!(
                "{name}: ratio at index {i} is {} but at index 2 is {b1}",
                ratio(i)
            )));
        }
    }
    let one = seq[0].field().one();
    Ok(&b1 - &one)
}

/// `γ`, `ϱ`, `θ_{−1}`, `θ_{d+1}` for one eigenvalue sequence and a given `β`.
fn sequence_parameters(seq: &[Scalar], beta: &Scalar, name: &str) -> Result<[Scalar; 4]> {
    let d = seq.len() - 1;
    let field = seq[0].field();
    let two = field.int(2);
    let gamma = match d {
        0 => (&two - beta) * &seq[0],
        1 => (&two - beta) * (&seq[0] + &seq[1]) * field.ratio(1, 2),
        _ => {
            let g = |i: usize| &(&seq[i - 1] - &(beta * &seq[i])) + &seq[i + 1];
            let g1 = g(1);
            for i in 2..d {
                if g(i) != g1 {
                    return Err(Error::Contradiction(format!(
                        "{name}: gamma at index {i} is {} but at index 1 is {g1}",
                        g(i)
                    )));
                }
            }
            g1
        }
    };
    let (m1, dp1) = if d == 0 {
        (seq[0].clone(), seq[0].clone())
    } else {
        (&(&gamma + &(beta * &seq[0])) - &seq[1], &(&gamma + &(beta * &seq[d])) - &seq[d - 1])
    };
    let rho_at = |x: &Scalar, y: &Scalar| {
        let quad = &(&(x * x) - &(&(beta * x) * y)) + &(y * y);
        &quad - &(&gamma * &(x + y))
    };
    let rho = if d == 0 { rho_at(&m1, &seq[0]) } else { rho_at(&seq[0], &seq[1]) };
    for i in 2..=d {
        let r = rho_at(&seq[i - 1], &seq[i]);
        if r != rho {
            return Err(Error::Contradiction(format!(
                "{name}: rho at index {i} is {r} but at index 1 is {rho}"
            )));
        }
    }
    Ok([gamma, rho, m1, dp1])
}

/// Solves for the relation parameters. For `d ≥ 3`, `β` is forced by the
/// eigenvalues and `beta` must agree with it if given; for `d ≤ 2`, `beta`
/// defaults to 2.
pub fn compute_relation_parameters(
    sys: &TridiagonalSystem,
    beta: Option<&Scalar>,
) -> Result<RelationParameters> {
    let field = sys.field();
    if let Some(b) = beta {
        field.check(b)?;
    }
    let beta = if sys.d() >= 3 {
        let b = forced_beta(sys.theta(), "theta")?;
        let bs = forced_beta(sys.thetastar(), "thetastar")?;
        if b != bs {
            return Err(Error::Contradiction(format!(
                "beta from theta is {b} but from thetastar is {bs}"
            )));
        }
        if let Some(given) = beta {
            if *given != b {
                return Err(Error::Contradiction(format!("beta is forced to be {b}, not {given}")));
            }
        }
        b
    } else {
        beta.cloned().unwrap_or_else(|| field.int(2))
    };
    let [gamma, rho, theta_m1, theta_dp1] = sequence_parameters(sys.theta(), &beta, "theta")?;
    let [gammastar, rhostar, thetastar_m1, thetastar_dp1] =
        sequence_parameters(sys.thetastar(), &beta, "thetastar")?;
    Ok(RelationParameters {
        beta,
        gamma,
        gammastar,
        rho,
        rhostar,
        theta_m1,
        theta_dp1,
        thetastar_m1,
        thetastar_dp1,
    })
}

/// LHS − RHS of the two expanded tridiagonal relations.
pub fn check_tridiagonal_relations(
    sys: &TridiagonalSystem,
    params: &RelationParameters,
) -> (Matrix, Matrix) {
    let one = sys.field().one();
    let b1 = &params.beta + &one;
    let side = |x: &Matrix, y: &Matrix, gamma: &Scalar, rho: &Scalar| {
        let x2 = x * x;
        let x3 = &x2 * x;
        let lhs = &(&(&(&x3 * y) - &(&(&x2 * y) * x).scale(&b1)) + &(&(x * y) * &x2).scale(&b1))
            - &(y * &x3);
        let rhs = &Matrix::commutator(&x2, y).scale(gamma) + &Matrix::commutator(x, y).scale(rho);
        &lhs - &rhs
    };
    (
        side(sys.a(), sys.astar(), &params.gamma, &params.rho),
        side(sys.astar(), sys.a(), &params.gammastar, &params.rhostar),
    )
}
