//! Finite-dimensional unitary representations: matrices over the algebra
//! together with integer weights of the carrier space.

use std::collections::BTreeMap;

use crate::boson::{BElement, BMono, TorusPoly};
use crate::braided::Braided;
use crate::coeff::{Coeff, Field};
use crate::error::{Error, Result};
use crate::lin::Lin;
use crate::polsuq2::{Element, Mono, Suq2};

#[derive(Clone, Debug, PartialEq)]
pub struct Representation<C: Coeff> {
    pub weights: Vec<i64>,
    pub entries: Vec<Vec<Element<C>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    /// `sum_j u_kj u_lj^* = delta_kl`
    UnitaryRows,
    /// `sum_j u_jk^* u_jl = delta_kl`
    UnitaryCols,
    /// `deg u_kl = n_k - n_l`
    Invariance,
    /// `Delta(u_kl) = sum_j u_kj (x) u_jl`
    Corep,
    Antipode,
    Counit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellFailure {
    pub check: Check,
    pub row: usize,
    pub col: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RepReport {
    pub failures: Vec<CellFailure>,
}

impl RepReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    fn push(&mut self, check: Check, row: usize, col: usize) {
        self.failures.push(CellFailure { check, row, col });
    }
}

/// Which leg weight enters the twist of the tensor product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistRule {
    /// `zeta^{(n_k - n_k') m_l}`
    RowWeight,
    /// `zeta^{(n_k - n_k') m_l'}`
    ColWeight,
}

impl<C: Coeff> Representation<C> {
    pub fn new(weights: Vec<i64>, entries: Vec<Vec<Element<C>>>) -> Result<Self> {
        let d = weights.len();
        if d == 0 || entries.len() != d || entries.iter().any(|row| row.len() != d) {
            return Err(Error::InvalidRep(format!("entries must be a {d}x{d} matrix")));
        }
        Ok(Representation { weights, entries })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    /// One-dimensional representation with entry 1.
    pub fn trivial(weight: i64) -> Self {
        Representation { weights: vec![weight], entries: vec![vec![Element::one()]] }
    }

    pub fn matrix_coeff(&self, row: usize, col: usize) -> Option<&Element<C>> {
        self.entries.get(row).and_then(|r| r.get(col))
    }
}

/// Result of the span check: for every target word, the coefficients
/// expressing it in terms of the listed matrix coefficients, or `None`.
#[derive(Clone, Debug)]
pub struct SpanReport<C: Coeff> {
    pub power: u32,
    pub columns: Vec<(u32, usize, usize)>,
    pub certificates: Vec<(Mono, Option<Lin<usize, C>>)>,
}

impl<C: Coeff> SpanReport<C> {
    pub fn pass(&self) -> bool {
        self.certificates.iter().all(|(_, c)| c.is_some())
    }
}

impl<F: Field> Suq2<F> {
    /// `[[a, -q g*], [g, a*]]` with weights `(0, 1)`.
    pub fn fundamental(&self) -> Representation<F::C> {
        let e = |m: Mono| Element::<F::C>::mono(m);
        Representation {
            weights: vec![0, 1],
            entries: vec![
                vec![e(Mono::ALPHA), Element::term(Mono::GAMMA_STAR, self.q().negated())],
                vec![e(Mono::GAMMA), e(Mono::ALPHA_STAR)],
            ],
        }
    }

    pub fn validate(&self, u: &Representation<F::C>) -> RepReport {
        let d = u.dim();
        let mut rep = RepReport::default();
        let stars: Vec<Vec<Element<F::C>>> =
            u.entries.iter().map(|row| row.iter().map(|x| self.star(x)).collect()).collect();
        for k in 0..d {
            for l in 0..d {
                let want = if k == l { Element::one() } else { Element::zero() };
                let mut rows = Element::zero();
                let mut cols = Element::zero();
                for j in 0..d {
                    rows = rows.add(&self.mul(&u.entries[k][j], &stars[l][j]));
                    cols = cols.add(&self.mul(&stars[j][k], &u.entries[j][l]));
                }
                if rows != want {
                    rep.push(Check::UnitaryRows, k, l);
                }
                if cols != want {
                    rep.push(Check::UnitaryCols, k, l);
                }
                let x = &u.entries[k][l];
                if !x.is_zero() && x.homogeneous_degree() != Some(u.weights[k] - u.weights[l]) {
                    rep.push(Check::Invariance, k, l);
                }
                let mut rhs = Braided::zero(2);
                for j in 0..d {
                    rhs = rhs.add(&Braided::tensor(&[&u.entries[k][j], &u.entries[j][l]])).expect("order 2");
                }
                if self.delta(x) != rhs {
                    rep.push(Check::Corep, k, l);
                }
            }
        }
        rep
    }

    pub fn tensor_rep(&self, u: &Representation<F::C>, v: &Representation<F::C>) -> Representation<F::C> {
        self.tensor_rep_with(u, v, TwistRule::RowWeight)
    }

    /// Entries `zeta^e u_kk' v_ll'` at row `(k, l)`, column `(k', l')`.
    pub fn tensor_rep_with(
        &self,
        u: &Representation<F::C>,
        v: &Representation<F::C>,
        rule: TwistRule,
    ) -> Representation<F::C> {
        let (du, dv) = (u.dim(), v.dim());
        let mut weights = Vec::with_capacity(du * dv);
        for k in 0..du {
            for l in 0..dv {
                weights.push(u.weights[k] + v.weights[l]);
            }
        }
        let mut entries = vec![vec![Element::zero(); du * dv]; du * dv];
        for k in 0..du {
            for l in 0..dv {
                for k2 in 0..du {
                    for l2 in 0..dv {
                        let m = match rule {
                            TwistRule::RowWeight => v.weights[l],
                            TwistRule::ColWeight => v.weights[l2],
                        };
                        let e = (u.weights[k] - u.weights[k2]) * m;
                        let x = self.mul(&u.entries[k][k2], &v.entries[l][l2]);
                        entries[k * dv + l][k2 * dv + l2] = x.scale(&self.zeta_pow(e));
                    }
                }
            }
        }
        Representation { weights, entries }
    }

    /// `u`, `u (T) u`, ... up to the `p`-th tensor power (`p >= 1`).
    pub fn tensor_power(&self, u: &Representation<F::C>, p: u32) -> Representation<F::C> {
        let mut acc = u.clone();
        for _ in 1..p {
            acc = self.tensor_rep(&acc, u);
        }
        acc
    }

    /// `S(u_np) = (u_pn)^*` for every entry.
    pub fn antipode_coeff_check(&self, u: &Representation<F::C>) -> RepReport {
        let mut rep = RepReport::default();
        for n in 0..u.dim() {
            for p in 0..u.dim() {
                if self.antipode(&u.entries[n][p]) != self.star(&u.entries[p][n]) {
                    rep.push(Check::Antipode, n, p);
                }
            }
        }
        rep
    }

    /// Entrywise counit is the identity matrix.
    pub fn counit_rep_check(&self, u: &Representation<F::C>) -> RepReport {
        let mut rep = RepReport::default();
        for k in 0..u.dim() {
            for l in 0..u.dim() {
                let want = if k == l { F::C::one() } else { F::C::zero() };
                if self.counit(&u.entries[k][l]) != want {
                    rep.push(Check::Counit, k, l);
                }
            }
        }
        rep
    }

    /// `T` (rows indexed by `v`, columns by `u`) is equivariant and
    /// satisfies `sum_k T_lk u_kj = sum_i v_li T_ij`.
    pub fn is_intertwiner(
        &self,
        t: &[Vec<F::C>],
        u: &Representation<F::C>,
        v: &Representation<F::C>,
    ) -> Result<bool> {
        let (du, dv) = (u.dim(), v.dim());
        if t.len() != dv || t.iter().any(|row| row.len() != du) {
            return Err(Error::InvalidRep(format!("T must be {dv}x{du}")));
        }
        for l in 0..dv {
            for k in 0..du {
                if !t[l][k].is_zero() && v.weights[l] != u.weights[k] {
                    return Ok(false);
                }
            }
        }
        for l in 0..dv {
            for j in 0..du {
                let mut lhs = Element::zero();
                for k in 0..du {
                    lhs.add_scaled(&u.entries[k][j], &t[l][k]);
                }
                let mut rhs = Element::zero();
                for i in 0..dv {
                    rhs.add_scaled(&v.entries[l][i], &t[i][j]);
                }
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `v_kl = kappa(u_kl) z^{n_l}`.
    pub fn boson_lift(&self, u: &Representation<F::C>) -> Vec<Vec<BElement<F::C>>> {
        let d = u.dim();
        (0..d)
            .map(|k| {
                (0..d)
                    .map(|l| {
                        let z = BElement::basis(BMono::z(u.weights[l] as i32));
                        self.b_mul(&self.kappa(&u.entries[k][l]), &z)
                    })
                    .collect()
            })
            .collect()
    }

    /// Unitarity over the bosonization, the ordinary corepresentation
    /// identity, and `pi(v) = diag(t^{n_k})`.
    pub fn lift_check(&self, u: &Representation<F::C>) -> RepReport {
        let v = self.boson_lift(u);
        let d = u.dim();
        let mut rep = RepReport::default();
        let stars: Vec<Vec<BElement<F::C>>> =
            v.iter().map(|row| row.iter().map(|x| self.b_star(x)).collect()).collect();
        for k in 0..d {
            for l in 0..d {
                let want = if k == l { BElement::basis(BMono::ONE) } else { BElement::zero() };
                let mut rows = BElement::zero();
                let mut cols = BElement::zero();
                let mut rhs = Lin::zero();
                for j in 0..d {
                    rows = rows.add(&self.b_mul(&v[k][j], &stars[l][j]));
                    cols = cols.add(&self.b_mul(&stars[j][k], &v[j][l]));
                    rhs = rhs.add(&self.b_tensor(&v[k][j], &v[j][l]));
                }
                if rows != want {
                    rep.push(Check::UnitaryRows, k, l);
                }
                if cols != want {
                    rep.push(Check::UnitaryCols, k, l);
                }
                if self.delta_b(&v[k][l]) != rhs {
                    rep.push(Check::Corep, k, l);
                }
                let pi_want = if k == l { TorusPoly::basis(u.weights[k] as i32) } else { TorusPoly::zero() };
                if self.pi_char(&v[k][l]) != pi_want {
                    rep.push(Check::Counit, k, l);
                }
            }
        }
        rep
    }

    /// Decides, by exact elimination, whether every basis word with
    /// `|n| + m + k <= n_max` is a combination of matrix coefficients of
    /// the tensor powers `u^{(T) j}`, `0 <= j <= n_max + 2`.
    pub fn coeff_span_check(&self, n_max: u32) -> SpanReport<F::C> {
        let power = n_max + 2;
        let u = self.fundamental();
        let mut columns = vec![(0u32, 0usize, 0usize)];
        let mut vectors = vec![Element::one()];
        let mut acc = u.clone();
        for p in 1..=power {
            if p > 1 {
                acc = self.tensor_rep(&acc, &u);
            }
            for (i, row) in acc.entries.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    if !x.is_zero() {
                        columns.push((p, i, j));
                        vectors.push(x.clone());
                    }
                }
            }
        }
        let bideg = |x: &Element<F::C>| -> Option<(i32, i64)> {
            let mut it = x.keys().map(|m| (m.n, m.deg()));
            let b = it.next()?;
            it.all(|c| c == b).then_some(b)
        };
        let all_homogeneous = vectors.iter().all(|x| bideg(x).is_some());
        let mut groups: BTreeMap<Option<(i32, i64)>, Vec<usize>> = BTreeMap::new();
        for (i, x) in vectors.iter().enumerate() {
            let key = if all_homogeneous { bideg(x) } else { None };
            groups.entry(key).or_default().push(i);
        }
        let b = n_max as i32;
        let mut certificates = Vec::new();
        let mut solvers: BTreeMap<Option<(i32, i64)>, Echelon<F::C>> = BTreeMap::new();
        for n in -b..=b {
            for m in 0..=n_max {
                for k in 0..=n_max {
                    if n.unsigned_abs() + m + k > n_max {
                        continue;
                    }
                    let target = Mono::new(n, m, k);
                    let key = if all_homogeneous { Some((n, target.deg())) } else { None };
                    let solver = solvers.entry(key).or_insert_with(|| {
                        let mut e = Echelon::default();
                        for &i in groups.get(&key).map(|v| v.as_slice()).unwrap_or(&[]) {
                            e.insert(&vectors[i], i);
                        }
                        e
                    });
                    certificates.push((target, solver.solve(&Element::mono(target))));
                }
            }
        }
        SpanReport { power, columns, certificates }
    }
}

/// Incremental row-echelon basis over the coefficient field, tracking each
/// basis vector as a combination of the inserted columns.
struct Echelon<C: Coeff> {
    rows: Vec<(Mono, Element<C>, Lin<usize, C>)>,
}

impl<C: Coeff> Default for Echelon<C> {
    fn default() -> Self {
        Echelon { rows: Vec::new() }
    }
}

impl<C: Coeff> Echelon<C> {
    fn reduce(&self, x: &Element<C>, mut comb: Lin<usize, C>) -> (Element<C>, Lin<usize, C>) {
        let mut x = x.clone();
        for (p, v, c) in &self.rows {
            let a = x.coeff(p);
            if !a.is_zero() {
                let na = a.negated();
                x.add_scaled(v, &na);
                comb.add_scaled(c, &na);
            }
        }
        (x, comb)
    }

    fn insert(&mut self, x: &Element<C>, idx: usize) {
        let (r, comb) = self.reduce(x, Lin::basis(idx));
        if r.is_zero() {
            return;
        }
        // Keep the existing rows reduced against the new pivot.
        let (p, a) = r.iter().map(|(m, c)| (*m, c.clone())).next().expect("nonzero");
        let inv = a.recip().expect("nonzero pivot");
        let v = r.scale(&inv);
        let c = comb.scale(&inv);
        for (_, w, wc) in self.rows.iter_mut() {
            let b = w.coeff(&p);
            if !b.is_zero() {
                let nb = b.negated();
                w.add_scaled(&v, &nb);
                wc.add_scaled(&c, &nb);
            }
        }
        self.rows.push((p, v, c));
    }

    fn solve(&self, x: &Element<C>) -> Option<Lin<usize, C>> {
        let (r, comb) = self.reduce(x, Lin::zero());
        if !r.is_zero() {
            return None;
        }
        Some(comb.neg())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::ExactField;
    use crate::scalar::Scalar;

    fn alg() -> Suq2<ExactField> {
        Suq2::new(ExactField::new(1).unwrap())
    }

    #[test]
    fn fundamental_is_valid() {
        let a = alg();
        let u = a.fundamental();
        assert!(a.validate(&u).pass());
        assert_eq!(u.matrix_coeff(1, 0).unwrap(), &Element::mono(Mono::GAMMA));
        assert_eq!(u.entries[1][0].homogeneous_degree(), Some(u.weights[1] - u.weights[0]));
    }

    #[test]
    fn wrong_weights_fail_invariance() {
        let a = alg();
        let mut u = a.fundamental();
        u.weights = vec![0, 0];
        let rep = a.validate(&u);
        assert!(rep.failures.contains(&CellFailure { check: Check::Invariance, row: 1, col: 0 }));
        assert!(rep.failures.iter().all(|f| f.check == Check::Invariance));
    }

    #[test]
    fn trivial_is_valid() {
        let a = alg();
        assert!(a.validate(&Representation::trivial(0)).pass());
        assert!(a.counit_rep_check(&Representation::trivial(3)).pass());
    }

    #[test]
    fn tensor_with_trivial() {
        let a = alg();
        let u = a.fundamental();
        let t = a.tensor_rep(&Representation::trivial(2), &u);
        assert_eq!(t.entries, u.entries);
        assert_eq!(t.weights, vec![2, 3]);
    }

    #[test]
    fn tensor_square_is_valid() {
        let a = alg();
        let u = a.fundamental();
        let uu = a.tensor_rep(&u, &u);
        assert_eq!(uu.weights, vec![0, 1, 1, 2]);
        assert!(a.validate(&uu).pass());
        // row (1,1), column (2,2) in 1-based pair notation
        let q2 = Scalar::q(1).mul_ref(&Scalar::q(1));
        assert_eq!(uu.entries[0][3], Element::term(Mono::new(0, 0, 2), q2));
    }

    #[test]
    fn column_weight_twist_breaks_corep() {
        let a = alg();
        let u = a.fundamental();
        let uu = a.tensor_rep_with(&u, &u, TwistRule::ColWeight);
        let rep = a.validate(&uu);
        assert!(rep.failures.iter().any(|f| f.check == Check::Corep));
    }

    #[test]
    fn antipode_and_counit_on_fundamental() {
        let a = alg();
        let u = a.fundamental();
        assert!(a.antipode_coeff_check(&u).pass());
        assert!(a.counit_rep_check(&u).pass());
        assert!(a.antipode_coeff_check(&a.tensor_rep(&u, &u)).pass());
    }

    #[test]
    fn intertwiner_examples() {
        let a = alg();
        let u = a.fundamental();
        let one = Scalar::one();
        let zero = Scalar::zero();
        let id = vec![vec![one.clone(), zero.clone()], vec![zero.clone(), one.clone()]];
        assert!(a.is_intertwiner(&id, &u, &u).unwrap());
        let t01 = Representation::<Scalar> {
            weights: vec![0, 1],
            entries: vec![
                vec![Element::one(), Element::zero()],
                vec![Element::zero(), Element::one()],
            ],
        };
        let e11 = vec![vec![one.clone(), zero.clone()], vec![zero.clone(), zero.clone()]];
        assert!(a.is_intertwiner(&e11, &t01, &t01).unwrap());
        let swap = vec![vec![zero.clone(), one.clone()], vec![one.clone(), zero.clone()]];
        assert!(!a.is_intertwiner(&swap, &t01, &t01).unwrap());
    }

    #[test]
    fn lift_of_fundamental() {
        let a = alg();
        let u = a.fundamental();
        let v = a.boson_lift(&u);
        let b = |n, m, k, l| BElement::<Scalar>::basis(BMono::new(n, m, k, l));
        assert_eq!(v[0][0], b(1, 0, 0, 0));
        assert_eq!(v[0][1], b(0, 0, 1, 1).scale(&Scalar::q(1).neg_ref()));
        assert_eq!(v[1][0], b(0, 1, 0, 0));
        assert_eq!(v[1][1], b(-1, 0, 0, 1));
        assert!(a.lift_check(&u).pass());
    }

    #[test]
    fn small_span_check() {
        let a = alg();
        let rep = a.coeff_span_check(1);
        assert!(rep.pass());
    }
}
