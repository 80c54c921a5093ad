//! Polynomials in a curve coordinate, an auxiliary coordinate bound by the
//! curve equation, and the jet parameter `u`.
//!
//! A monomial `z^e w^b u^k` is stored with `0 <= b <= max_aux`; products with
//! a larger `w` exponent are rewritten with the curve relation. For the
//! genus-two curve the rewriting introduces negative powers of `z`, so `e`
//! is signed.

use std::collections::HashMap;

use crate::linalg::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Mono {
    pub e: i32,
    pub b: u8,
    pub k: u8,
}

impl Mono {
    pub const ONE: Mono = Mono { e: 0, b: 0, k: 0 };

    pub fn new(e: i32, b: u8, k: u8) -> Self {
        Mono { e, b, k }
    }
}

pub(crate) type IntPoly = Vec<(Mono, i64)>;

/// The relation satisfied by the auxiliary coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Relation {
    /// No auxiliary coordinate.
    Free,
    /// `y^2 = x^3 - x`.
    Elliptic,
    /// `s^2 (t^3 + 1) + t^2 - t = 0`, used as
    /// `t^3 = -1 + s^-2 t - s^-2 t^2` in the Laurent ring in `s`.
    Genus2,
}

/// `w^b` for `b` above the normal-form range, as `(Δe, b', coefficient)`.
const ELLIPTIC_Y2: &[(i32, u8, i64)] = &[(3, 0, 1), (1, 0, -1)];
const GENUS2_T3: &[(i32, u8, i64)] = &[(0, 0, -1), (-2, 1, 1), (-2, 2, -1)];
const GENUS2_T4: &[(i32, u8, i64)] = &[(0, 1, -1), (-2, 2, 1), (-2, 0, 1), (-4, 1, -1), (-4, 2, 1)];

impl Relation {
    pub fn max_aux(self) -> u8 {
        match self {
            Relation::Free => 0,
            Relation::Elliptic => 1,
            Relation::Genus2 => 2,
        }
    }

    /// Normal form of the product of two normal-form monomials.
    pub fn mul_mono(self, a: Mono, b: Mono) -> MonoProduct {
        let e = a.e + b.e;
        let k = a.k + b.k;
        let aux = a.b + b.b;
        if aux <= self.max_aux() {
            return MonoProduct::Single(Mono::new(e, aux, k));
        }
        let table = match (self, aux) {
            (Relation::Elliptic, 2) => ELLIPTIC_Y2,
            (Relation::Genus2, 3) => GENUS2_T3,
            (Relation::Genus2, 4) => GENUS2_T4,
            _ => unreachable!("auxiliary exponent {aux} cannot arise from normal forms"),
        };
        MonoProduct::Expanded(e, k, table)
    }

    pub fn mul_int(self, a: &[(Mono, i64)], b: &[(Mono, i64)]) -> IntPoly {
        let mut acc: HashMap<Mono, i64> = HashMap::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                self.mul_mono(*ma, *mb)
                    .for_each(|m, c| *acc.entry(m).or_insert(0) += ca * cb * c);
            }
        }
        let mut out: IntPoly = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        out.sort();
        out
    }
}

pub(crate) enum MonoProduct {
    Single(Mono),
    Expanded(i32, u8, &'static [(i32, u8, i64)]),
}

impl MonoProduct {
    pub fn for_each(self, mut f: impl FnMut(Mono, i64)) {
        match self {
            MonoProduct::Single(m) => f(m, 1),
            MonoProduct::Expanded(e, k, table) => {
                for &(de, b, c) in table {
                    f(Mono::new(e + de, b, k), c);
                }
            }
        }
    }
}

/// A derivation of the coordinate ring, given by its values on the curve
/// coordinate and on the auxiliary coordinate. It must annihilate the
/// relation so that it descends to normal forms.
pub(crate) struct Derivation {
    pub relation: Relation,
    pub on_main: IntPoly,
    pub on_aux: IntPoly,
}

impl Derivation {
    /// `D(z^e w^b) = e z^{e-1} w^b D(z) + b z^e w^{b-1} D(w)`.
    pub fn apply_mono(&self, m: Mono) -> IntPoly {
        let mut out = Vec::new();
        if m.e != 0 {
            out.extend(
                self.relation
                    .mul_int(&[(Mono::new(m.e - 1, m.b, m.k), m.e as i64)], &self.on_main),
            );
        }
        if m.b != 0 {
            out.extend(
                self.relation
                    .mul_int(&[(Mono::new(m.e, m.b - 1, m.k), m.b as i64)], &self.on_aux),
            );
        }
        let mut acc: HashMap<Mono, i64> = HashMap::new();
        for (mono, c) in out {
            *acc.entry(mono).or_insert(0) += c;
        }
        let mut out: IntPoly = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        out.sort();
        out
    }

    /// The jet `f + u D(f)` of a monomial section `f`.
    pub fn jet(&self, m: Mono) -> IntPoly {
        let mut out = vec![(m, 1)];
        out.extend(
            self.apply_mono(m)
                .into_iter()
                .map(|(d, c)| (Mono::new(d.e, d.b, d.k + 1), c)),
        );
        out.sort();
        out
    }
}

/// Adds `a * b` to `acc`.
pub(crate) fn mul_into<F: Field>(
    field: &F,
    relation: Relation,
    a: &[(Mono, F::Elem)],
    b: &[(Mono, F::Elem)],
    acc: &mut HashMap<Mono, F::Elem>,
) {
    for (mb, cb) in b {
        for (ma, ca) in a {
            let cab = field.mul(ca, cb);
            relation.mul_mono(*ma, *mb).for_each(|m, c| {
                let term = if c == 1 {
                    cab.clone()
                } else {
                    field.mul(&cab, &field.from_i64(c))
                };
                let slot = acc.entry(m).or_insert_with(|| field.zero());
                *slot = field.add(slot, &term);
            });
        }
    }
}
