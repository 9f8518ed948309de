//! Braided characters and the differentials they induce on ordered tensor
//! products `V_{c_1}⊗…⊗V_{c_L}`, `c_1 ≤ … ≤ c_L`.

use std::collections::BTreeMap;

use super::{GradedComplex, Group, Which};
use crate::braided::BraidedSystem;
use crate::error::{Error, Result};
use crate::hopf::Bialgebra;
use crate::report::{AxiomCheck, AxiomReport};
use crate::tensor::{LinMap, Space};

/// One map `ζ_i: V_i → k` per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidedCharacter {
    pub zeta: Vec<LinMap>,
}

impl BraidedCharacter {
    /// Zero on every component except those listed.
    pub fn supported_on(s: &BraidedSystem, maps: &[(usize, LinMap)]) -> Result<Self> {
        let f = s.field();
        let mut zeta: Vec<LinMap> = s.components().iter().map(|v| LinMap::zero(f, vec![v.clone()], vec![])).collect();
        for (i, m) in maps {
            let v = s.components().get(*i).ok_or_else(|| Error::Invalid(format!("no component {i}")))?;
            zeta[*i] = m.retyped(vec![v.clone()], vec![])?;
        }
        Ok(BraidedCharacter { zeta })
    }
}

/// `(ζ_j⊗ζ_i)∘σ_ij = ζ_i⊗ζ_j` for every `i ≤ j`.
pub fn check_character(s: &BraidedSystem, c: &BraidedCharacter) -> Result<AxiomReport> {
    let r = s.rank();
    if c.zeta.len() != r {
        return Err(Error::Invalid(format!("character has {} maps for rank {r}", c.zeta.len())));
    }
    let mut rep = AxiomReport::default();
    for i in 0..r {
        for j in i..r {
            let lhs = c.zeta[j].tensor(&c.zeta[i]).compose(s.sigma(i, j))?;
            let rhs = c.zeta[i].tensor(&c.zeta[j]);
            rep.push(AxiomCheck::compare(format!("character ({i},{j})"), &lhs, &rhs));
        }
    }
    Ok(rep)
}

/// `(ε_H, ε_{H*})` on a system `(H, M_1, …, M_r, H*)`: the counit of `H` on
/// the first component and the counit of `H*`, evaluation at `1`, on the last.
pub fn eps_characters(b: &Bialgebra, s: &BraidedSystem) -> Result<(BraidedCharacter, BraidedCharacter)> {
    let r = s.rank();
    if r < 2 || s.components()[0].dim != b.dim() || s.components()[r - 1].dim != b.dim() {
        return Err(Error::Invalid("expected a system (H, …, H*) over this bialgebra".into()));
    }
    let eps_h = BraidedCharacter::supported_on(s, &[(0, b.eps.clone())])?;
    let eps_hd = BraidedCharacter::supported_on(s, &[(r - 1, b.nu.rainbow_dual())])?;
    Ok((eps_h, eps_hd))
}

fn ordered_words(r: usize, len: usize) -> Vec<Vec<usize>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for w in ordered_words(r, len - 1) {
        let start = w.last().copied().unwrap_or(0);
        for c in start..r {
            let mut x = w.clone();
            x.push(c);
            out.push(x);
        }
    }
    out
}

fn word_label(components: &[Space], counts: &[usize]) -> String {
    let parts: Vec<String> = counts
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { components[i].label.clone() } else { format!("{}^{k}", components[i].label) })
        .collect();
    if parts.is_empty() {
        "k".into()
    } else {
        parts.join("⊗")
    }
}

/// `ζd` (stored as `d`) and `dξ` (stored as `d′`) on all ordered words of
/// length `≤ bound`; the multidegree of a word counts each color.
///
/// `ζd` moves the `i`-th factor to the front with the braiding and applies
/// `ζ` there, with sign `(−1)^{i−1}`; `dξ` moves it to the back and applies
/// `ξ`, with sign `(−1)^{L−1}(−1)^{L−i}` on words of length `L`.
pub fn generic_differentials(
    s: &BraidedSystem,
    zeta: &BraidedCharacter,
    xi: &BraidedCharacter,
    bound: usize,
) -> Result<GradedComplex> {
    for (name, c) in [("ζ", zeta), ("ξ", xi)] {
        let rep = check_character(s, c)?;
        if !rep.passed() {
            return Err(Error::AxiomFailure(format!("{name} is not a braided character:\n{rep}")));
        }
    }
    let f = s.field();
    let r = s.rank();
    let comps = s.components();
    let mut groups = Vec::new();
    let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for len in 0..=bound {
        for w in ordered_words(r, len) {
            let mut counts = vec![0; r];
            for &c in &w {
                counts[c] += 1;
            }
            index.insert(w.clone(), groups.len());
            groups.push(Group {
                label: word_label(comps, &counts),
                multidegree: counts,
                total: len,
                factors: w.iter().map(|&c| comps[c].clone()).collect(),
            });
        }
    }
    let mut cx = GradedComplex::new(f, bound, groups);
    let words: Vec<Vec<usize>> = index.keys().cloned().collect();
    for w in words.iter().filter(|w| !w.is_empty()) {
        let src = index[w];
        let len = w.len();
        let mut d_blocks: BTreeMap<usize, LinMap> = BTreeMap::new();
        let mut dp_blocks: BTreeMap<usize, LinMap> = BTreeMap::new();
        for q in 0..len {
            let mut rest = w.clone();
            rest.remove(q);
            let tgt = index[&rest];
            let factors: Vec<Space> = w.iter().map(|&c| comps[c].clone()).collect();
            if !zeta.zeta[w[q]].matrix().is_zero() {
                let mut ctx = factors.clone();
                let mut acc = LinMap::identity(f, &ctx);
                for t in (0..q).rev() {
                    acc = s.sigma(w[t], w[q]).embed_at(t, &ctx)?.compose(&acc)?;
                    ctx.swap(t, t + 1);
                }
                let term = zeta.zeta[w[q]].embed_at(0, &ctx)?.compose(&acc)?.scale(&f.one().signed(q));
                accumulate(&mut d_blocks, tgt, term)?;
            }
            if !xi.zeta[w[q]].matrix().is_zero() {
                let mut ctx = factors;
                let mut acc = LinMap::identity(f, &ctx);
                for t in q..len - 1 {
                    acc = s.sigma(w[q], w[t + 1]).embed_at(t, &ctx)?.compose(&acc)?;
                    ctx.swap(t, t + 1);
                }
                let sign = f.one().signed((len - 1) + (len - 1 - q));
                let term = xi.zeta[w[q]].embed_at(len - 1, &ctx)?.compose(&acc)?.scale(&sign);
                accumulate(&mut dp_blocks, tgt, term)?;
            }
        }
        for (tgt, m) in d_blocks {
            cx.set_block(Which::D, src, tgt, m.into_matrix())?;
        }
        for (tgt, m) in dp_blocks {
            cx.set_block(Which::DPrime, src, tgt, m.into_matrix())?;
        }
    }
    Ok(cx)
}

fn accumulate(blocks: &mut BTreeMap<usize, LinMap>, tgt: usize, term: LinMap) -> Result<()> {
    let sum = match blocks.remove(&tgt) {
        Some(prev) => prev.add(&term)?,
        None => term,
    };
    blocks.insert(tgt, sum);
    Ok(())
}
