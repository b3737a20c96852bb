use std::collections::HashMap;

use super::{Partition, RepnError};
use crate::exactalg::{Field, Matrix, Rat, Ring};
use crate::symgroup::{GroupAlgebraElement, Perm};

/// A standard Young tableau; `rows[r]` lists the entries of row `r`
/// (0-based values).
pub type Tableau = Vec<Vec<usize>>;

/// Standard Young tableaux of shape `lambda`, generated by placing the
/// largest entry in each removable corner recursively.
pub fn standard_tableaux(lambda: &Partition) -> Vec<Tableau> {
    let n = lambda.size();
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (r, mu) in corners(lambda) {
        for mut t in standard_tableaux(&mu) {
            if t.len() <= r {
                t.push(Vec::new());
            }
            t[r].push(n - 1);
            out.push(t);
        }
    }
    out
}

fn corners(lambda: &Partition) -> Vec<(usize, Partition)> {
    let p = lambda.parts();
    (0..p.len())
        .filter(|&i| lambda.part(i + 1) < p[i])
        .map(|i| {
            let mut q = p.to_vec();
            q[i] -= 1;
            (i, Partition::new(q).unwrap())
        })
        .collect()
}

fn position(t: &Tableau, v: usize) -> (usize, usize) {
    for (r, row) in t.iter().enumerate() {
        if let Some(c) = row.iter().position(|&x| x == v) {
            return (r, c);
        }
    }
    panic!("entry {} missing from tableau", v);
}

/// Young's seminormal representation of `S_n` on the span of standard
/// tableaux of shape `lambda`, with exact rational matrices.
#[derive(Clone, Debug)]
pub struct IrrepModel {
    lambda: Partition,
    tableaux: Vec<Tableau>,
    /// images of the adjacent transpositions `(i, i+1)`, `i = 0..n-2`
    gens: Vec<Matrix<Rat>>,
    images: HashMap<Perm, Matrix<Rat>>,
}

impl IrrepModel {
    pub fn build(lambda: &Partition) -> Result<Self, RepnError> {
        let n = lambda.size();
        if n == 0 {
            return Err(RepnError::Empty);
        }
        let tableaux = standard_tableaux(lambda);
        let index: HashMap<Tableau, usize> =
            tableaux.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let d = tableaux.len();
        let mut gens = Vec::new();
        for i in 0..n.saturating_sub(1) {
            let mut m = Matrix::<Rat>::zeros(d, d);
            for (col, t) in tableaux.iter().enumerate() {
                let (r1, c1) = position(t, i);
                let (r2, c2) = position(t, i + 1);
                if r1 == r2 {
                    m.set(col, col, Rat::one());
                } else if c1 == c2 {
                    m.set(col, col, -Rat::one());
                } else {
                    // axial distance from i to i+1
                    let a = Rat::from_int((c2 as i64 - r2 as i64) - (c1 as i64 - r1 as i64));
                    let mut s = t.clone();
                    s[r1][c1] = i + 1;
                    s[r2][c2] = i;
                    let other = index[&s];
                    m.set(col, col, a.recip());
                    // i above i+1: v_T -> v_T/a + v_T'; otherwise the
                    // partner column (1 - 1/a^2) v_T' - v_T/a
                    if r1 < r2 {
                        m.set(other, col, Rat::one());
                    } else {
                        m.set(other, col, Rat::one() - a.recip() * a.recip());
                    }
                }
            }
            gens.push(m);
        }
        let mut model = IrrepModel {
            lambda: lambda.clone(),
            tableaux,
            gens,
            images: HashMap::new(),
        };
        model.check_coxeter()?;
        model.images = model.all_images();
        Ok(model)
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn n(&self) -> usize {
        self.lambda.size()
    }

    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn tableaux(&self) -> &[Tableau] {
        &self.tableaux
    }

    pub fn generators(&self) -> &[Matrix<Rat>] {
        &self.gens
    }

    fn check_coxeter(&self) -> Result<(), RepnError> {
        let id = Matrix::<Rat>::identity(self.dim());
        let g = &self.gens;
        for i in 0..g.len() {
            if g[i].mul(&g[i]) != id {
                return Err(RepnError::Coxeter(format!("s{}^2", i + 1)));
            }
            for j in i + 1..g.len() {
                let p = g[i].mul(&g[j]);
                let ok = if j == i + 1 {
                    p.mul(&p).mul(&p) == id
                } else {
                    p.mul(&p) == id
                };
                if !ok {
                    return Err(RepnError::Coxeter(format!("s{} s{}", i + 1, j + 1)));
                }
            }
        }
        Ok(())
    }

    /// Images of every permutation, by breadth-first search from the
    /// identity along left multiplication by adjacent transpositions.
    fn all_images(&self) -> HashMap<Perm, Matrix<Rat>> {
        let n = self.n();
        let mut seen = HashMap::new();
        let id = Perm::identity(n);
        seen.insert(id.clone(), Matrix::identity(self.dim()));
        let mut frontier = vec![id];
        let adj: Vec<Perm> = (0..n.saturating_sub(1)).map(|i| Perm::transposition(n, i, i + 1)).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in frontier {
                for (i, s) in adj.iter().enumerate() {
                    let q = s.compose(&p);
                    if !seen.contains_key(&q) {
                        let m = self.gens[i].mul(&seen[&p]);
                        seen.insert(q.clone(), m);
                        next.push(q);
                    }
                }
            }
            frontier = next;
        }
        seen
    }

    /// Image of a single permutation.
    pub fn perm_image(&self, p: &Perm) -> &Matrix<Rat> {
        &self.images[p]
    }

    /// Image of a group algebra element whose coefficients can be scaled by
    /// rationals (`scale(c, r) = c r`).
    pub fn act_with<C: Ring>(
        &self,
        g: &GroupAlgebraElement<C>,
        scale: impl Fn(&C, &Rat) -> C,
    ) -> Matrix<C> {
        let d = self.dim();
        let mut out = Matrix::<C>::zeros(d, d);
        for (p, c) in g.terms() {
            assert_eq!(p.n(), self.n(), "permutation degree differs from the module");
            let m = &self.images[p];
            for i in 0..d {
                for j in 0..d {
                    let r = m.get(i, j);
                    if !r.is_zero() {
                        let v = out.get(i, j).plus(&scale(c, r));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn act<S: Field>(&self, g: &GroupAlgebraElement<S>) -> Matrix<S> {
        self.act_with(g, |c, r| c.mul_rat(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgroup::{alpha, Sign};
    use proptest::prelude::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn coxeter_relations_up_to_six() {
        for n in 1..=6 {
            for l in Partition::all(n) {
                let m = IrrepModel::build(&l).unwrap();
                assert_eq!(m.dim(), l.dim());
            }
        }
    }

    #[test]
    fn one_dimensional_reps() {
        let triv = IrrepModel::build(&Partition::row(4)).unwrap();
        let sign = IrrepModel::build(&Partition::column(4)).unwrap();
        for g in triv.generators() {
            assert_eq!(*g, Matrix::identity(1));
        }
        for g in sign.generators() {
            assert_eq!(*g, Matrix::scalar(1, &-Rat::one()));
        }
        for p in Perm::all(4) {
            assert_eq!(*sign.perm_image(&p).get(0, 0), Rat::from_int(p.sign()));
        }
    }

    #[test]
    fn characters_of_s3() {
        let m = IrrepModel::build(&part("2,1")).unwrap();
        let t = Perm::transposition(3, 0, 1);
        assert_eq!(m.perm_image(&t).trace(), Rat::zero());
        assert_eq!(m.perm_image(&Perm::identity(3)).trace(), Rat::from_int(2));
        let c = Perm::from_cycles(3, &[&[0, 1, 2]]);
        assert_eq!(m.perm_image(&c).trace(), Rat::from_int(-1));
    }

    #[test]
    fn central_elements_act_as_scalars() {
        for l in Partition::all(4) {
            let m = IrrepModel::build(&l).unwrap();
            for k in 0..=4 {
                let sum: GroupAlgebraElement<Rat> = crate::symgroup::subsets_of_size(4, k)
                    .into_iter()
                    .fold(GroupAlgebraElement::zero(), |acc, x| {
                        acc.plus(&alpha(4, x, Sign::Minus))
                    });
                let img = m.act(&sum);
                let s = img.get(0, 0).clone();
                assert_eq!(img, Matrix::scalar(m.dim(), &s));
            }
        }
    }

    fn arb_elem() -> impl Strategy<Value = GroupAlgebraElement<Rat>> {
        let perms = Perm::all(4);
        proptest::collection::vec((0..perms.len(), -3i64..4), 0..6).prop_map(move |v| {
            GroupAlgebraElement::from_terms(
                v.into_iter().map(|(i, c)| (perms[i].clone(), Rat::from_int(c))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn act_is_multiplicative(a in arb_elem(), b in arb_elem(), pick in 0usize..5) {
            let l = Partition::all(4)[pick].clone();
            let m = IrrepModel::build(&l).unwrap();
            prop_assert_eq!(m.act(&a.times(&b)), m.act(&a).mul(&m.act(&b)));
        }
    }
}
