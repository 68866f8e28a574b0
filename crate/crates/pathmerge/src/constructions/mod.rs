//! Parametric graph families with known merging counts.

mod bounds;
mod fixtures;
mod splice;

pub use bounds::{bound_table, BoundQuery, BoundTable};
pub use fixtures::{fixture, fixture_names};
pub use splice::{concat_back_to_back, concat_chain, concat_f_g, concat_shifted, gen_mn_lower};

use serde::Serialize;

use crate::codec::{decode, decode_identical, MergingSequence};
use crate::error::{Error, Result};
use crate::layout::Layout;
use crate::network::{MergeNetwork, Mode};

/// 1 for odd `x`, 2 for even `x`.
pub fn bracket2(x: usize) -> usize {
    if x % 2 == 1 {
        1
    } else {
        2
    }
}

/// Least strictly positive residue of `x` modulo `n`.
pub fn residue(x: i64, n: usize) -> usize {
    let r = x.rem_euclid(n as i64) as usize;
    if r == 0 {
        n
    } else {
        r
    }
}

fn collect(len: usize, mut slots: Vec<Option<(usize, usize)>>) -> Vec<(usize, usize)> {
    slots.resize(len + 1, None);
    slots[1..=len].iter().map(|s| s.expect("every stroke position is assigned")).collect()
}

/// Strokes of the non-reroutable (2,n)-graph with 3n-1 mergings.
pub fn two_n_sequence(n: usize) -> MergingSequence {
    let len = 3 * n - 1;
    let mut om = vec![None; len + 1];
    for i in 1..=n {
        om[3 * i - 2] = Some((bracket2(i), 1));
    }
    for i in 1..n {
        om[3 * i - 1] = Some((bracket2(i), i + 1));
        om[3 * i] = Some((bracket2(i + 1), i + 1));
    }
    om[3 * n - 1] = Some((bracket2(n + 1), 1));
    MergingSequence::new(2, n, collect(len, om))
}

/// Strokes of F(n,n), 2n²-3n+2 mergings.
pub fn f_sequence(n: usize) -> MergingSequence {
    let len = 2 * n * n + 2 - 3 * n;
    let mut om = vec![None; len + 1];
    for i in 0..n {
        for j in 1..n {
            om[2 * i * (n - 1) + j] = Some((residue(j as i64 - i as i64, n), i + 1));
        }
    }
    om[2 * (n - 1) * (n - 1) + n] = Some((residue(1, n), n));
    for i in 0..n.saturating_sub(1) {
        for j in 1..n {
            om[(2 * i + 1) * (n - 1) + j] = Some((n - i, residue(i as i64 - j as i64 + 2, n)));
        }
    }
    MergingSequence::new(n, n, collect(len, om))
}

/// Strokes of E(n,n), (n-1)² mergings, as 0-based pairs.
pub fn e_pairs(n: usize) -> Vec<(usize, usize)> {
    let len = (n - 1) * (n - 1);
    let mut om = vec![None; len + 1];
    for i in 0..n.saturating_sub(1) {
        for j in 1..n - i {
            om[i * (2 * n - i - 2) + j] = Some((i, j));
        }
    }
    for i in 0..n.saturating_sub(2) {
        for j in 1..n - i - 1 {
            om[i * (2 * n - i - 3) + (n - 1) + j] = Some((n - 1 - j, n - 1 - i));
        }
    }
    collect(len, om)
}

/// Strokes of H(1,k): one path crossing each of k paths in turn.
pub fn h_sequence(k: usize) -> MergingSequence {
    MergingSequence::new(1, k, (1..=k).map(|j| (1, j)).collect())
}

pub fn gen_two_n_extremal(n: usize) -> MergeNetwork {
    decode(&two_n_sequence(n.max(1))).expect("valid by construction")
}

pub fn gen_e(n: usize) -> MergeNetwork {
    e_net(n.max(1)).expect("valid by construction")
}

fn e_net(n: usize) -> Result<MergeNetwork> {
    decode_identical(&MergingSequence::from_zero_based(n, n, &e_pairs(n)))
}

pub fn gen_f(n: usize) -> MergeNetwork {
    decode(&f_sequence(n.max(1))).expect("valid by construction")
}

pub fn gen_h(k: usize) -> MergeNetwork {
    decode(&h_sequence(k.max(1))).expect("valid by construction")
}

fn lam(i: usize, j: usize) -> String {
    format!("l{i}_{j}")
}

fn mu(i: usize, j: usize) -> String {
    format!("m{i}_{j}")
}

/// k single paths crossing two shared paths, with consecutive single paths
/// chained to each other: 3k-1 mergings.
pub fn gen_ones_two_chain(k: usize) -> MergeNetwork {
    ones_two_chain_layout(k).build().expect("valid by construction")
}

fn ones_two_chain_layout(k: usize) -> Layout {
    let k = k.max(1);
    let mut l = Layout::new(Mode::Distinct);
    for i in 1..=k {
        let g = l.group(&format!("S{i}"), &format!("R{i}"));
        let mut ms = Vec::new();
        if i > 1 {
            ms.push(mu(i - 1, i));
        }
        ms.push(lam(i, 1));
        ms.push(lam(i, 2));
        if i < k {
            ms.push(mu(i, i + 1));
        }
        l.path(g, ms);
    }
    let g = l.group(&format!("S{}", k + 1), &format!("R{}", k + 1));
    l.path(g, (1..=k).map(|i| lam(i, 1)));
    l.path(g, (1..=k).map(|i| lam(i, 2)));
    l
}

/// k single paths split into a lower and an upper half that cross each
/// other completely: ⌊k²/4⌋+k+2 mergings for k ≥ 2.
pub fn gen_ones_two_grid(k: usize) -> MergeNetwork {
    ones_two_grid_layout(k).build().expect("valid by construction")
}

fn ones_two_grid_layout(k: usize) -> Layout {
    let k = k.max(1);
    let a = k.div_ceil(2);
    let mut l = Layout::new(Mode::Distinct);
    for i in 1..=k {
        let g = l.group(&format!("S{i}"), &format!("R{i}"));
        let mut ms = Vec::new();
        if i <= a {
            if i == 1 {
                ms.push(lam(1, 1));
            }
            ms.push(lam(i, 2));
            ms.extend((a + 1..=k).map(|j| mu(i, j)));
        } else {
            ms.extend((1..=a).map(|h| mu(h, i)));
            ms.push(lam(i, 1));
            if i == k {
                ms.push(lam(k, 2));
            }
        }
        l.path(g, ms);
    }
    let g = l.group(&format!("S{}", k + 1), &format!("R{}", k + 1));
    l.path(g, std::iter::once(lam(1, 1)).chain((a + 1..=k).map(|j| lam(j, 1))));
    let mut second: Vec<String> = (1..=a).map(|i| lam(i, 2)).collect();
    if k > a {
        second.push(lam(k, 2));
    }
    l.path(g, second);
    l
}

/// Band sizes `(k1, k2, k3)` used by [`gen_ones_n`].
pub fn ones_n_bands(k: usize) -> (usize, usize, usize) {
    let half = k.div_ceil(2);
    (half.div_ceil(2), k / 2, half / 2)
}

/// k single paths each crossing all n shared paths, the middle band also
/// crossing both outer bands: nk+⌊k²/4⌋ mergings.
pub fn gen_ones_n(k: usize, n: usize) -> MergeNetwork {
    ones_n_layout(k, n).build().expect("valid by construction")
}

fn ones_n_layout(k: usize, n: usize) -> Layout {
    let (k, n) = (k.max(1), n.max(1));
    let (k1, k2, _) = ones_n_bands(k);
    let middle = k1 + 1..=k1 + k2;
    let mut l = Layout::new(Mode::Distinct);
    for i in 1..=k {
        let g = l.group(&format!("S{i}"), &format!("R{i}"));
        let cross: Vec<String> = (1..=n).map(|j| lam(i, j)).collect();
        let ms: Vec<String> = if i <= k1 {
            cross.into_iter().chain(middle.clone().map(|j| mu(i, j))).collect()
        } else if i <= k1 + k2 {
            (1..=k1).map(|a| mu(a, i)).chain(cross).chain((k1 + k2 + 1..=k).map(|a| mu(a, i))).collect()
        } else {
            middle.clone().map(|j| mu(i, j)).chain(cross).collect()
        };
        l.path(g, ms);
    }
    let g = l.group(&format!("S{}", k + 1), &format!("R{}", k + 1));
    for j in 1..=n {
        l.path(g, (1..=k).map(|i| lam(i, j)));
    }
    l
}

/// Strokes of the (2,n) base used by [`gen_one_two_n`].
pub fn one_two_n_base(n: usize) -> MergingSequence {
    let len = 3 * n - 1;
    let mut om = vec![None; len + 1];
    for (k, s) in [(2, 1), (1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (2, 1)].into_iter().enumerate() {
        om[k + 1] = Some(s);
    }
    for i in 3..=n {
        om[3 * i - 1] = Some((bracket2(i), 1));
    }
    for i in 3..n {
        om[3 * i] = Some((bracket2(i), i + 1));
        om[3 * i + 1] = Some((bracket2(i + 1), i + 1));
    }
    MergingSequence::new(2, n, collect(len, om))
}

/// A single path crossing the n-path group and then the 2-path group of a
/// (2,n) base: 4n+1 mergings. Groups are ordered single, pair, n-group.
pub fn gen_one_two_n(n: usize) -> Result<MergeNetwork> {
    if n < 4 {
        return Err(Error::ParamTooSmall { name: "n", value: n, min: 4 });
    }
    let base = one_two_n_base(n);
    let mut l = Layout::new(Mode::Distinct);
    let beta = l.group("S1", "R1");
    let xi = l.group("S2", "R2");
    let eta = l.group("S3", "R3");
    let stroke = |k: usize| format!("g{}", k + 1);
    for i in 1..=2 {
        let rest = base.strokes.iter().enumerate().filter(|(_, s)| s.0 == i).map(|(k, _)| stroke(k));
        l.path(xi, std::iter::once(format!("x{i}")).chain(rest));
    }
    for j in 1..=n {
        let rest = base.strokes.iter().enumerate().filter(|(_, s)| s.1 == j).map(|(k, _)| stroke(k));
        l.path(eta, std::iter::once(format!("y{j}")).chain(rest));
    }
    l.path(beta, (1..=n).map(|j| format!("y{j}")).chain((1..=2).map(|i| format!("x{i}"))));
    l.build()
}

/// Every generator family, for recipes and the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    TwoN,
    E,
    F,
    H,
    OnesTwoChain,
    OnesTwoGrid,
    OnesN,
    OneTwoN,
    MnLower,
    /// F(n,n) spliced onto H(1,n).
    ConcatFG,
    /// Two shared-source E(n,n) glued source to source.
    ConcatBackToBack,
    /// E(n+1,n+1) glued to a shifted E(n-1,n-1).
    ConcatShifted,
    /// `copies` shared-source E(n,n) chained sink to source.
    ConcatChain,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Ok(match s.to_ascii_lowercase().replace(['_', '-'], "").as_str() {
            "twon" => Family::TwoN,
            "e" => Family::E,
            "f" => Family::F,
            "h" => Family::H,
            "onestwochain" | "chain" => Family::OnesTwoChain,
            "onestwogrid" | "grid" => Family::OnesTwoGrid,
            "onesn" => Family::OnesN,
            "onetwon" => Family::OneTwoN,
            "mnlower" | "mn" => Family::MnLower,
            "concatfg" | "fg" => Family::ConcatFG,
            "concatbacktoback" | "backtoback" => Family::ConcatBackToBack,
            "concatshifted" | "shifted" => Family::ConcatShifted,
            "concatchain" => Family::ConcatChain,
            _ => return Err(Error::Parse(format!("unknown family `{s}`"))),
        })
    }
}

/// A family with its parameters and the merging count it should produce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionRecipe {
    pub family: Family,
    pub params: Vec<usize>,
    pub expected_mergings: usize,
    pub expected_nonreroutable: bool,
}

impl ConstructionRecipe {
    /// `params` holds n, k, (k, n), (m, n) or (n, copies) depending on the family.
    pub fn new(family: Family, params: &[usize]) -> Result<ConstructionRecipe> {
        let need = match family {
            Family::OnesN | Family::MnLower | Family::ConcatChain => 2,
            _ => 1,
        };
        if params.len() != need || params.contains(&0) {
            return Err(Error::Parse(format!("{family:?} takes {need} positive parameter(s)")));
        }
        let p = params[0];
        if family == Family::ConcatShifted && p < 2 {
            return Err(Error::ParamTooSmall { name: "n", value: p, min: 2 });
        }
        if family == Family::OneTwoN && p < 4 {
            return Err(Error::ParamTooSmall { name: "n", value: p, min: 4 });
        }
        let expected_mergings = match family {
            Family::TwoN => 3 * p - 1,
            Family::E => (p - 1) * (p - 1),
            Family::F => 2 * p * p + 2 - 3 * p,
            Family::H => p,
            Family::OnesTwoChain => 3 * p - 1,
            Family::OnesTwoGrid => p * p / 4 + p + 2,
            Family::OnesN => params[1] * p + p * p / 4,
            Family::OneTwoN => 4 * p + 1,
            Family::MnLower => 2 * p * params[1] + 1 - p - params[1],
            Family::ConcatFG => 2 * p * p + 1 - 2 * p,
            Family::ConcatBackToBack => 2 * (p - 1) * (p - 1) + p,
            Family::ConcatShifted => p * p + (p - 2) * (p - 2) + p - 1,
            Family::ConcatChain => params[1] * (p - 1) * (p - 1),
        };
        let expected_nonreroutable = match family {
            // below this band some single path can always be rerouted
            Family::OnesN => 4 * params[1] + 1 >= 3 * p,
            _ => true,
        };
        Ok(ConstructionRecipe { family, params: params.to_vec(), expected_mergings, expected_nonreroutable })
    }

    pub fn build(&self) -> Result<MergeNetwork> {
        let p = self.params[0];
        Ok(match self.family {
            Family::TwoN => decode(&two_n_sequence(p))?,
            Family::E => e_net(p)?,
            Family::F => decode(&f_sequence(p))?,
            Family::H => decode(&h_sequence(p))?,
            Family::OnesTwoChain => ones_two_chain_layout(p).build()?,
            Family::OnesTwoGrid => ones_two_grid_layout(p).build()?,
            Family::OnesN => ones_n_layout(p, self.params[1]).build()?,
            Family::OneTwoN => gen_one_two_n(p)?,
            Family::MnLower => gen_mn_lower(p, self.params[1])?,
            Family::ConcatFG => concat_f_g(&decode(&f_sequence(p))?, &decode(&h_sequence(p))?)?,
            Family::ConcatBackToBack => concat_back_to_back(&e_net(p)?, &e_net(p)?)?,
            Family::ConcatShifted => concat_shifted(&e_net(p + 1)?, &e_net(p - 1)?)?,
            Family::ConcatChain => concat_chain(&vec![e_net(p)?; self.params[1]])?,
        })
    }

    /// The generating sequence, for families defined by one.
    pub fn sequence(&self) -> Option<MergingSequence> {
        let p = self.params[0];
        Some(match self.family {
            Family::TwoN => two_n_sequence(p),
            Family::E => MergingSequence::from_zero_based(p, p, &e_pairs(p)),
            Family::F => f_sequence(p),
            Family::H => h_sequence(p),
            _ => return None,
        })
    }
}
