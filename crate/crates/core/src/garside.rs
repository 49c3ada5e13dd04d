//! Artin groups of type ADE: left-greedy Garside normal forms.
//!
//! Simple elements are Weyl group elements, stored as integer matrices on the root lattice.

use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::roots::classify;
use serde::{Deserialize, Serialize};
use std::fmt;

type WMat = Vec<i64>;

/// A letter of a braid word: generator index and sign.
pub type Letter = (usize, i8);

/// Normal form Delta^delta * f_1 * ... * f_r; each factor is its lexicographically least reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Braid {
    pub delta: i64,
    pub factors: Vec<Vec<usize>>,
}

impl Braid {
    pub fn identity() -> Braid {
        Braid { delta: 0, factors: Vec::new() }
    }

    pub fn is_identity(&self) -> bool {
        self.delta == 0 && self.factors.is_empty()
    }

    /// Sum of exponents; a homomorphism to Z.
    pub fn exponent_sum(&self, n_pos_roots: usize) -> i64 {
        self.delta * n_pos_roots as i64 + self.factors.iter().map(|f| f.len() as i64).sum::<i64>()
    }
}

impl fmt::Display for Braid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        if self.delta != 0 {
            parts.push(format!("Δ^{}", self.delta));
        }
        for fac in &self.factors {
            parts.push(fac.iter().map(|s| format!("s{s}")).collect::<Vec<_>>().join(""));
        }
        write!(f, "{}", parts.join(" · "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct WElem {
    m: WMat,
    inv: WMat,
}

#[derive(Clone, Debug)]
pub struct ArtinGroup {
    pub rank: usize,
    simple: Vec<WElem>,
    id: WElem,
    w0: WElem,
    w0_len: usize,
}

fn mat_mul(n: usize, a: &WMat, b: &WMat) -> WMat {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += x * b[k * n + j];
            }
        }
    }
    c
}

fn identity(n: usize) -> WMat {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

impl ArtinGroup {
    /// Artin group of the underlying graph of a quiver; fails unless it is of type ADE.
    pub fn for_quiver(q: &Quiver) -> Result<Self> {
        if !classify(q).is_dynkin() {
            return Err(Error::NonSphericalType);
        }
        let n = q.vertices;
        let mut cartan = vec![vec![0i64; n]; n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(s, t) in &q.arrows {
            cartan[s][t] -= 1;
            cartan[t][s] -= 1;
        }
        Ok(Self::from_cartan(&cartan))
    }

    fn from_cartan(cartan: &[Vec<i64>]) -> Self {
        let n = cartan.len();
        // s_i(v) = v - (A v)_i e_i
        let simple: Vec<WElem> = (0..n)
            .map(|i| {
                let mut m = identity(n);
                for j in 0..n {
                    m[i * n + j] -= cartan[i][j];
                }
                WElem { inv: m.clone(), m }
            })
            .collect();
        let id = WElem { m: identity(n), inv: identity(n) };
        let mut g = ArtinGroup { rank: n, simple, id: id.clone(), w0: id.clone(), w0_len: 0 };
        let mut w = id;
        let mut len = 0;
        while let Some(s) = (0..n).find(|&s| !g.is_right_descent(&w, s)) {
            w = g.wmul(&w, &g.simple[s]);
            len += 1;
        }
        g.w0 = w;
        g.w0_len = len;
        g
    }

    pub fn positive_root_count(&self) -> usize {
        self.w0_len
    }

    fn wmul(&self, a: &WElem, b: &WElem) -> WElem {
        WElem { m: mat_mul(self.rank, &a.m, &b.m), inv: mat_mul(self.rank, &b.inv, &a.inv) }
    }

    fn col_negative(&self, w: &WMat, s: usize) -> bool {
        let n = self.rank;
        (0..n).any(|r| w[r * n + s] < 0)
    }

    /// w s < w iff w(alpha_s) < 0.
    fn is_right_descent(&self, w: &WElem, s: usize) -> bool {
        self.col_negative(&w.m, s)
    }

    /// s w < w iff w^{-1}(alpha_s) < 0.
    fn is_left_descent(&self, w: &WElem, s: usize) -> bool {
        self.col_negative(&w.inv, s)
    }

    fn word_to_w<'a>(&self, word: impl Iterator<Item = &'a usize>) -> WElem {
        word.fold(self.id.clone(), |w, &s| self.wmul(&w, &self.simple[s]))
    }

    /// Lexicographically least reduced word.
    fn lex_word(&self, w: &WElem) -> Vec<usize> {
        let mut cur = w.clone();
        let mut word = Vec::new();
        while cur != self.id {
            let s = (0..self.rank).find(|&s| self.is_left_descent(&cur, s)).expect("nontrivial element has a left descent");
            cur = self.wmul(&self.simple[s], &cur);
            word.push(s);
        }
        word
    }

    fn tau_w(&self, w: &WElem) -> WElem {
        self.wmul(&self.wmul(&self.w0, w), &self.w0)
    }

    fn from_braid(&self, b: &Braid) -> (i64, Vec<WElem>) {
        (b.delta, b.factors.iter().map(|f| self.word_to_w(f.iter())).collect())
    }

    fn to_braid(&self, delta: i64, factors: &[WElem]) -> Braid {
        Braid { delta, factors: factors.iter().map(|f| self.lex_word(f)).collect() }
    }

    /// Restore left-weightedness, pull Delta factors to the front and drop identities.
    fn normalize(&self, mut delta: i64, mut f: Vec<WElem>) -> (i64, Vec<WElem>) {
        let n = self.rank;
        loop {
            let mut changed = false;
            for i in (0..f.len().saturating_sub(1)).rev() {
                loop {
                    let t = (0..n).find(|&t| self.is_left_descent(&f[i + 1], t) && !self.is_right_descent(&f[i], t));
                    let Some(t) = t else { break };
                    f[i] = self.wmul(&f[i], &self.simple[t]);
                    f[i + 1] = self.wmul(&self.simple[t], &f[i + 1]);
                    changed = true;
                }
            }
            let before = f.len();
            f.retain(|x| x != &self.id);
            changed |= f.len() != before;
            while f.first() == Some(&self.w0) {
                f.remove(0);
                delta += 1;
                changed = true;
            }
            if !changed {
                break;
            }
        }
        (delta, f)
    }

    pub fn generator(&self, s: usize, sign: i8) -> Braid {
        self.mul_letter(&Braid::identity(), (s, sign))
    }

    /// x * s^{+-1}.
    pub fn mul_letter(&self, x: &Braid, (s, sign): Letter) -> Braid {
        assert!(s < self.rank, "generator out of range");
        let (mut delta, mut f) = self.from_braid(x);
        if sign > 0 {
            f.push(self.simple[s].clone());
        } else {
            // x s^{-1} = Delta^{p-1} tau(f_1)..tau(f_r) tau(s w0)
            delta -= 1;
            f = f.iter().map(|w| self.tau_w(w)).collect();
            f.push(self.wmul(&self.w0, &self.simple[s]));
        }
        let (d, f) = self.normalize(delta, f);
        self.to_braid(d, &f)
    }

    pub fn letters(&self, x: &Braid) -> Vec<Letter> {
        let mut out = Vec::new();
        let w0_word = self.lex_word(&self.w0);
        for _ in 0..x.delta.max(0) {
            out.extend(w0_word.iter().map(|&s| (s, 1)));
        }
        for _ in 0..(-x.delta).max(0) {
            out.extend(w0_word.iter().rev().map(|&s| (s, -1)));
        }
        for fac in &x.factors {
            out.extend(fac.iter().map(|&s| (s, 1)));
        }
        out
    }

    pub fn from_letters(&self, letters: &[Letter]) -> Braid {
        letters.iter().fold(Braid::identity(), |acc, &l| self.mul_letter(&acc, l))
    }

    pub fn mul(&self, x: &Braid, y: &Braid) -> Braid {
        self.letters(y).into_iter().fold(x.clone(), |acc, l| self.mul_letter(&acc, l))
    }

    pub fn inverse(&self, x: &Braid) -> Braid {
        let inv: Vec<Letter> = self.letters(x).into_iter().rev().map(|(s, e)| (s, -e)).collect();
        self.from_letters(&inv)
    }

    /// w x w^{-1}.
    pub fn conjugate(&self, w: &Braid, x: &Braid) -> Braid {
        self.mul(&self.mul(w, x), &self.inverse(w))
    }

    pub fn delta(&self) -> Braid {
        Braid { delta: 1, factors: Vec::new() }
    }
}
