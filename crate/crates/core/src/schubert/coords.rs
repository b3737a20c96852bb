use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{schubert_type, SchubertData, SchubertError};
use crate::exactalg::{Field, Poly};
use crate::weylalg::DiffOp;
use crate::wronskian::{cofactor_operator, wronskian, PolySubspace};

/// Canonical coordinates `v_ij` (`j <= lambda_i`) of a space in a Schubert
/// cell. Keys are 1-based `(i, j)` as in the canonical basis
/// `f_i = u^d_i / d_i! + sum_j (-1)^(1+n-i-j+e_j) v_ij u^e_j / e_j!`.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalCoords<S> {
    pub schubert: SchubertData,
    pub v: BTreeMap<(usize, usize), S>,
}

#[derive(Serialize, Deserialize)]
struct CoordsRepr<S> {
    partition: Vec<usize>,
    n: usize,
    coords: BTreeMap<String, S>,
}

impl<S: Field + Serialize> Serialize for CanonicalCoords<S> {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        CoordsRepr {
            partition: self.schubert.lambda.parts().to_vec(),
            n: self.schubert.n,
            coords: self
                .v
                .iter()
                .map(|((i, j), c)| (format!("({},{})", i, j), c.clone()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, S: Field + Deserialize<'de>> Deserialize<'de> for CanonicalCoords<S> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = CoordsRepr::<S>::deserialize(d)?;
        let lambda = crate::repn::Partition::new(r.partition).map_err(D::Error::custom)?;
        let schubert = SchubertData::new(&lambda, r.n).map_err(D::Error::custom)?;
        let mut v = BTreeMap::new();
        for (k, c) in r.coords {
            let t = k.trim_matches(|ch| ch == '(' || ch == ')');
            let (a, b) = t.split_once(',').ok_or_else(|| D::Error::custom("bad key"))?;
            let i: usize = a.trim().parse().map_err(D::Error::custom)?;
            let j: usize = b.trim().parse().map_err(D::Error::custom)?;
            v.insert((i, j), c);
        }
        Ok(CanonicalCoords { schubert, v })
    }
}

fn factorial<S: Field>(k: usize) -> S {
    (1..=k as i64).fold(S::one(), |acc, x| acc * S::from_i64(x))
}

/// `(-1)^(1+n-i-j+e_j)` with 1-based `i, j`.
fn sign_value<S: Field>(n: usize, i: usize, j: usize, e: usize) -> S {
    // parity of 1 + n - i - j + e
    let parity = (1 + n + e + i + j) % 2;
    if parity == 0 {
        S::one()
    } else {
        -S::one()
    }
}

impl<S: Field> CanonicalCoords<S> {
    /// All coordinates zero: the span of `u^d_i`.
    pub fn zero(schubert: &SchubertData) -> Self {
        let mut v = BTreeMap::new();
        for i in 1..=schubert.n {
            for j in 1..=schubert.lambda_i(i - 1) {
                v.insert((i, j), S::zero());
            }
        }
        CanonicalCoords {
            schubert: schubert.clone(),
            v,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.v[&(i, j)]
    }

    /// Canonical basis element `f_i` (1-based `i`).
    pub fn basis_element(&self, i: usize) -> Poly<S> {
        let sd = &self.schubert;
        let di = sd.d[i - 1];
        let mut f = Poly::monomial(factorial::<S>(di).inv(), di);
        for j in 1..=sd.lambda_i(i - 1) {
            let e = sd.e[j - 1];
            let c = sign_value::<S>(sd.n, i, j, e) * self.v[&(i, j)].clone() * factorial::<S>(e).inv();
            f = &f + &Poly::monomial(c, e);
        }
        f
    }

    /// The canonical basis `f_1, .., f_n`.
    pub fn basis(&self) -> Vec<Poly<S>> {
        (1..=self.schubert.n).map(|i| self.basis_element(i)).collect()
    }

    /// The space spanned by the canonical basis.
    pub fn to_subspace(&self) -> PolySubspace<S> {
        let monic = self
            .basis()
            .into_iter()
            .map(|f| {
                let lc = f.leading().cloned().unwrap();
                f.scale(&lc.inv())
            })
            .collect();
        PolySubspace::from_canonical(monic, Poly::one())
    }
}

/// Canonical coordinates of a space of polynomials.
pub fn canonical_coords<S: Field>(v: &PolySubspace<S>) -> Result<CanonicalCoords<S>, SchubertError> {
    if v.denominator().degree() != Some(0) {
        return Err(SchubertError::NotPolynomial);
    }
    let sd = schubert_type(v);
    let mut out = CanonicalCoords::zero(&sd);
    for (idx, p) in v.basis().iter().enumerate() {
        let i = idx + 1;
        let di = sd.d[idx];
        // canonical numerators are monic, so f_i = p / d_i!
        let lc = p.leading().cloned().unwrap();
        let f = p.scale(&(lc * factorial::<S>(di)).inv());
        for j in 1..=sd.lambda_i(idx) {
            let e = sd.e[j - 1];
            let c = f.coeff(e) * factorial::<S>(e) * sign_value::<S>(sd.n, i, j, e);
            out.v.insert((i, j), c);
        }
    }
    Ok(out)
}

/// `v*_ij = v_ji` on the conjugate cell.
pub fn grassmann_dual<S: Field>(c: &CanonicalCoords<S>) -> Result<CanonicalCoords<S>, SchubertError> {
    let sd = c.schubert.conjugate()?;
    let mut out = CanonicalCoords::zero(&sd);
    for ((i, j), x) in out.v.iter_mut() {
        *x = c.v[&(*j, *i)].clone();
    }
    Ok(out)
}

/// `Wr_V D_V` with the monic Wronskian: polynomial coefficients, the
/// coefficient of `d^i` of degree at most `i`.
pub fn omega_map<S: Field>(v: &PolySubspace<S>) -> DiffOp<Poly<S>> {
    let basis = v.basis();
    let c = cofactor_operator(basis);
    let lc = c.coeffs().last().and_then(|p| p.leading().cloned()).expect("independent basis");
    let inv = lc.inv();
    c.map(|p| p.scale(&inv))
}

/// Order at most `n` and `deg psi_i <= i + shift`.
fn in_y<S: Field>(op: &DiffOp<Poly<S>>, n: usize, shift: usize) -> bool {
    op.order().is_none_or(|o| o <= n)
        && op
            .coeffs()
            .iter()
            .enumerate()
            .all(|(i, p)| p.degree().is_none_or(|d| d <= i + shift))
}

/// Coefficient of `u^e` in `Wr(f_1, .., f_n, u^d) / lc Wr(f_1, .., f_n)`,
/// that is in `Wr_V D_V u^d`.
fn s_value<S: Field>(basis: &[Poly<S>], d: usize, e: usize) -> S {
    let wr = wronskian(basis);
    let lc = wr.leading().cloned().expect("independent basis");
    let mut ext = basis.to_vec();
    ext.push(Poly::monomial(S::one(), d));
    wronskian(&ext).coeff(e) * lc.inv()
}

/// Left inverse of [`omega_map`] on the cell `sd`: solves for the canonical
/// coordinates in increasing order of `d_i - e_j`. The coordinate `v_ij`
/// enters the coefficient `s_ij` of `u^(e_j + |lambda| - n)` in
/// `Wr_V D_V u^d_i` with a nonzero constant factor, plus terms in lower
/// coordinates only, so two evaluations determine it. For `|lambda| = n`
/// the operators are those of order at most `n` with `deg psi_i <= i`.
pub fn upsilon_map<S: Field>(
    op: &DiffOp<Poly<S>>,
    sd: &SchubertData,
) -> Result<PolySubspace<S>, SchubertError> {
    Ok(upsilon_coords(op, sd)?.to_subspace())
}

pub(crate) fn upsilon_coords<S: Field>(
    op: &DiffOp<Poly<S>>,
    sd: &SchubertData,
) -> Result<CanonicalCoords<S>, SchubertError> {
    let size = sd.lambda.size();
    if !in_y(op, sd.n, size.saturating_sub(sd.n)) {
        return Err(SchubertError::NotInY { n: sd.n });
    }
    // e_j + |lambda| - n >= e_1 + |lambda| - n = |lambda| - len(lambda) >= 0
    let shift = |e: usize| e + size - sd.n;
    let mut coords = CanonicalCoords::<S>::zero(sd);
    let mut order: Vec<(usize, usize)> = coords.v.keys().cloned().collect();
    order.sort_by_key(|&(i, j)| (sd.d[i - 1] - sd.e[j - 1], i, j));
    for (i, j) in order {
        let di = sd.d[i - 1];
        let e = shift(sd.e[j - 1]);
        // target: coefficient of u^e in op(u^d_i)
        let mono = Poly::monomial(S::one(), di);
        let mut image = Poly::zero();
        let mut der = mono;
        for c in op.coeffs() {
            image = &image + &(c * &der);
            der = der.derivative();
        }
        let target = image.coeff(e);
        coords.v.insert((i, j), S::zero());
        let s0 = s_value(&coords.basis(), di, e);
        coords.v.insert((i, j), S::one());
        let s1 = s_value(&coords.basis(), di, e);
        let slope = s1 - s0.clone();
        if slope.is_zero() {
            return Err(SchubertError::ZeroPivot { i, j });
        }
        coords.v.insert((i, j), (target - s0) / slope);
    }
    Ok(coords)
}

/// `Omega^{lambda*} o dual o Upsilon^lambda`.
pub fn theta<S: Field>(op: &DiffOp<Poly<S>>, sd: &SchubertData) -> Result<DiffOp<Poly<S>>, SchubertError> {
    let c = upsilon_coords(op, sd)?;
    let dual = grassmann_dual(&c)?;
    Ok(omega_map(&dual.to_subspace()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{Rat, RatFunc, Ring};
    use crate::repn::Partition;
    use proptest::prelude::*;

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_ints(cs)
    }

    fn v_e1() -> PolySubspace<Rat> {
        PolySubspace::new(vec![p(&[0, 0, 0, 4, 1]), p(&[0, -2, 1]), p(&[1])]).unwrap()
    }

    fn v_e2() -> PolySubspace<Rat> {
        PolySubspace::new(vec![p(&[0, 0, 0, -4, 1]), p(&[0, 2, 1]), p(&[1])]).unwrap()
    }

    fn coords_vec(c: &CanonicalCoords<Rat>) -> Vec<Rat> {
        c.v.values().cloned().collect()
    }

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::from_int(x)).collect()
    }

    #[test]
    fn example_coordinates_and_duality() {
        let c1 = canonical_coords(&v_e1()).unwrap();
        let c2 = canonical_coords(&v_e2()).unwrap();
        assert_eq!(coords_vec(&c1), ints(&[0, 1, -1]));
        assert_eq!(coords_vec(&c2), ints(&[0, -1, 1]));
        let d1 = grassmann_dual(&c1).unwrap();
        assert_eq!(d1.to_subspace(), v_e2());
        assert_eq!(c1.to_subspace(), v_e1());
        let js = serde_json::to_value(&c1).unwrap();
        assert_eq!(js["coords"]["(1,2)"], "1/1");
        let back: CanonicalCoords<Rat> = serde_json::from_value(js).unwrap();
        assert_eq!(back, c1);
    }

    #[test]
    fn monomial_spaces_have_zero_coordinates() {
        let sd = SchubertData::new(&"3,1".parse().unwrap(), 3).unwrap();
        let mono = PolySubspace::new(sd.d.iter().map(|&d| Poly::monomial(Rat::one(), d)).collect()).unwrap();
        let c = canonical_coords(&mono).unwrap();
        assert!(c.v.values().all(|x| x.is_zero()));
        let dual = grassmann_dual(&c).unwrap();
        assert!(dual.v.values().all(|x| x.is_zero()));
        assert_eq!(dual.schubert.lambda, "2,1,1".parse::<Partition>().unwrap());
        let wide = SchubertData::new(&"4".parse().unwrap(), 3).unwrap();
        assert!(grassmann_dual(&CanonicalCoords::<Rat>::zero(&wide)).is_err());
    }

    #[test]
    fn theta_on_the_example() {
        // w D-_E1 and w D-_E2 for w = u^3 - 3u
        let w = p(&[0, -3, 0, 1]);
        let op1 = DiffOp::new(vec![Poly::zero(), p(&[3, 3]), p(&[3, 0, -3]), w.clone()]);
        let op2 = DiffOp::new(vec![Poly::zero(), p(&[-3, 3]), p(&[3, 0, -3]), w]);
        assert_eq!(omega_map(&v_e1()), op1);
        let sd = SchubertData::new(&"2,1".parse().unwrap(), 3).unwrap();
        assert_eq!(upsilon_map(&op1, &sd).unwrap(), v_e1());
        assert_eq!(theta(&op1, &sd).unwrap(), op2);
        let mono_sd = SchubertData::new(&"2,1".parse().unwrap(), 3).unwrap();
        let zero = CanonicalCoords::<Rat>::zero(&mono_sd);
        let op = omega_map(&zero.to_subspace());
        assert!(upsilon_coords(&op, &mono_sd).unwrap().v.values().all(|x| x.is_zero()));
        // not in Y_n: coefficient of d^0 of positive degree
        let bad = DiffOp::new(vec![p(&[0, 1]), Poly::one()]);
        assert!(upsilon_map(&bad, &SchubertData::new(&Partition::empty(), 1).unwrap()).is_err());
    }

    fn cells(n: usize) -> Vec<SchubertData> {
        let mut out = Vec::new();
        for size in 0..=n * n {
            for l in Partition::all(size) {
                if l.len() <= n && l.part(0) <= n {
                    out.push(SchubertData::new(&l, n).unwrap());
                }
            }
        }
        out
    }

    fn random_coords(sd: &SchubertData, seed: &[i64]) -> CanonicalCoords<Rat> {
        let mut c = CanonicalCoords::zero(sd);
        for (k, x) in c.v.values_mut().enumerate() {
            *x = Rat::new(seed[k % seed.len()], 1 + (k as i64 % 3));
        }
        c
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn coordinates_round_trip(n in 1usize..5, pick in 0usize..1000, seed in proptest::collection::vec(-4i64..5, 1..8)) {
            let all = cells(n);
            let sd = &all[pick % all.len()];
            let c = random_coords(sd, &seed);
            let v = c.to_subspace();
            prop_assert_eq!(&canonical_coords(&v).unwrap(), &c);
            prop_assert_eq!(&PolySubspace::new(v.basis().to_vec()).unwrap(), &v);
        }

        #[test]
        fn dual_is_involution_preserving_wronskian(n in 1usize..5, pick in 0usize..1000, seed in proptest::collection::vec(-4i64..5, 1..8)) {
            let all = cells(n);
            let sd = &all[pick % all.len()];
            let c = random_coords(sd, &seed);
            let d = grassmann_dual(&c).unwrap();
            prop_assert_eq!(&grassmann_dual(&d).unwrap(), &c);
            let w1: RatFunc = c.to_subspace().monic_wronskian();
            let w2: RatFunc = d.to_subspace().monic_wronskian();
            prop_assert_eq!(w1, w2);
        }

        #[test]
        fn upsilon_inverts_omega(n in 1usize..5, pick in 0usize..1000, seed in proptest::collection::vec(-4i64..5, 1..8)) {
            let all = cells(n);
            let sd = &all[pick % all.len()];
            let v = random_coords(sd, &seed).to_subspace();
            prop_assert_eq!(upsilon_map(&omega_map(&v), sd).unwrap(), v);
        }
    }
}
