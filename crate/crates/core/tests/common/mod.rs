//! Test-side oracles that do not go through the restriction coproduct.
#![allow(dead_code)]

use hwcb::cartan::{DimVector, QuiverDatum, Vertex};
use hwcb::qarith::LaurentPoly;
use hwcb::uminus::{mono_mul, FlagMonomial, UMinusElement};
use rand::Rng;

fn gen(i: Vertex, a: u32) -> UMinusElement {
    UMinusElement::generator(i, a)
}

fn word_element(slots: &[(Vertex, u32)]) -> UMinusElement {
    slots.iter().fold(UMinusElement::one(), |acc, &(j, a)| mono_mul(&acc, &gen(j, a)))
}

fn content(q: &QuiverDatum, slots: &[(Vertex, u32)]) -> DimVector {
    slots.iter().fold(q.zero_vector(), |acc, &(j, a)| acc.plus(j, a))
}

/// `r_i` by the twisted Leibniz rule, peeling off the first slot:
/// `r_i(F_j^{(a)} y) = delta_ij v^{-(a-1)} v^{-(i,|y|)} F_i^{(a-1)} y + F_j^{(a)} r_i(y)`.
pub fn leibniz_right(q: &QuiverDatum, slots: &[(Vertex, u32)], i: Vertex) -> UMinusElement {
    let Some((&(j, a), rest)) = slots.split_first() else {
        return UMinusElement::zero();
    };
    let mut out = mono_mul(&gen(j, a), &leibniz_right(q, rest, i));
    if j == i {
        let twist = -(a as i32 - 1) - q.form_simple(i, &content(q, rest)) as i32;
        let head = mono_mul(&gen(i, a - 1), &word_element(rest));
        out = out.add(&head.scale(&LaurentPoly::v_pow(twist)));
    }
    out
}

/// `_i r` by the mirrored rule, peeling off the last slot:
/// `_i r(y F_j^{(a)}) = delta_ij v^{-(a-1)} v^{-(i,|y|)} y F_i^{(a-1)} + _i r(y) F_j^{(a)}`.
pub fn leibniz_left(q: &QuiverDatum, slots: &[(Vertex, u32)], i: Vertex) -> UMinusElement {
    let Some((&(j, a), rest)) = slots.split_last() else {
        return UMinusElement::zero();
    };
    let mut out = mono_mul(&leibniz_left(q, rest, i), &gen(j, a));
    if j == i {
        let twist = -(a as i32 - 1) - q.form_simple(i, &content(q, rest)) as i32;
        let tail = mono_mul(&word_element(rest), &gen(i, a - 1));
        out = out.add(&tail.scale(&LaurentPoly::v_pow(twist)));
    }
    out
}

/// A random flag monomial of height between 1 and `max_height`, as raw
/// slots (adjacent slots may repeat a vertex).
pub fn random_slots<R: Rng>(rng: &mut R, n: usize, max_height: u32) -> Vec<(Vertex, u32)> {
    let h = rng.gen_range(1..=max_height);
    let mut left = h;
    let mut slots = Vec::new();
    while left > 0 {
        let a = rng.gen_range(1..=left);
        slots.push((rng.gen_range(0..n), a));
        left -= a;
    }
    slots
}

pub fn normalized(slots: &[(Vertex, u32)]) -> FlagMonomial {
    FlagMonomial::normalize(slots).0
}

pub fn a2() -> QuiverDatum {
    QuiverDatum::type_a(2)
}

pub fn kronecker() -> QuiverDatum {
    QuiverDatum::multi_edge(2)
}
