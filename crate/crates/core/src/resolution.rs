//! Minimal graded free resolutions by iterated Schreyer syzygies.

use crate::complex::{minimize_complex, GradedFreeComplex, PolyMatrix};
use crate::error::{Error, Result};
use crate::gb::{assume_basis, buchberger, schreyer_syzygies};
use crate::module::{FreeElement, FreeModuleSpec};

/// Resolves the submodule generated by `gens` inside their common free module.
///
/// `F_0` is the free module on a Groebner basis of the submodule. Each level is
/// sorted by lead component and then lexicographically by lead exponents before
/// its syzygies are taken, which makes lead terms at level `k` free of the first
/// `k` variables and stops the frame after at most `n` steps.
pub fn resolve_module(gens: &[FreeElement], minimize: bool) -> Result<GradedFreeComplex> {
    let first = gens.first().ok_or(Error::Range { what: "number of generators", value: 0 })?;
    let ring = first.module().ring().clone();
    let n = ring.num_vars();

    let mut level = buchberger(gens)?.generators;
    let mut modules: Vec<FreeModuleSpec> = Vec::new();
    let mut differentials = Vec::new();
    loop {
        sort_frame(&mut level);
        if let Some(prev) = modules.last() {
            let columns = level.iter().map(|s| s.to_column()).collect();
            differentials.push(PolyMatrix::from_columns(prev.rank(), columns)?);
        }
        modules.push(FreeModuleSpec::new(level.iter().map(frame_degree).collect()));
        if level.is_empty() || modules.len() > n + 2 {
            break;
        }
        let (syz, _) = schreyer_syzygies(&assume_basis(level)?)?;
        if syz.is_empty() {
            break;
        }
        level = syz;
    }
    if modules.len() > n + 2 {
        return Err(Error::Internal("Schreyer frame did not terminate".into()));
    }
    let complex = GradedFreeComplex::new(ring, modules, differentials)?;
    Ok(if minimize { minimize_complex(&complex) } else { complex })
}

/// Degree of a frame element, read from its lead term.
fn frame_degree(s: &FreeElement) -> i64 {
    let lead = s.lead().expect("syzygies are nonzero");
    s.module().term_degree(lead.comp, &lead.mono)
}

fn sort_frame(level: &mut [FreeElement]) {
    level.sort_by(|a, b| {
        let (la, lb) = (a.lead().expect("nonzero"), b.lead().expect("nonzero"));
        la.comp.cmp(&lb.comp).then_with(|| la.mono.cmp_lex(&lb.mono))
    });
}
