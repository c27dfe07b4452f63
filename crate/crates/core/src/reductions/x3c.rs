use std::collections::BTreeMap;

use super::{Reduction, ReductionCertificate, ReductionError, ReductionKind, Role, Source, X3cInstance};
use crate::model::{HoleMode, Program};
use crate::weight::Weight;

/// Height-2 tree: a root over one leaf per element. Triple `i` becomes the
/// subtree `t{i}` of the root and its three leaves; each leaf is padded with
/// single-leaf fillers `f{e}_{j}` until every point has pressure `m`.
/// An exact cover exists iff `n` spills bring Maxlive down to `m − 1`.
pub fn gen_x3c<W: Weight>(x: &X3cInstance) -> Result<Reduction<W>, ReductionError> {
    x.check()?;
    let m = x.triples.len();
    let leaf = |e: usize| e as u32 + 2;
    let parents: Vec<Option<u32>> =
        std::iter::once(None).chain((0..x.elements).map(|_| Some(1))).collect();
    let mut prog = Program::tree_ranges(&parents);
    let mut roles = BTreeMap::new();
    for (i, t) in x.triples.iter().enumerate() {
        let name = format!("t{i}");
        let mut pts = vec![1];
        pts.extend(t.iter().map(|&e| leaf(e)));
        pts.sort_unstable();
        prog = prog.subtree(&name, W::one(), &pts);
        roles.insert(name, Role::Labeled { index: i });
    }
    for e in 0..x.elements {
        let covered = x.triples.iter().filter(|t| t.contains(&e)).count();
        for j in 0..m - covered {
            let name = format!("f{e}_{j}");
            prog = prog.subtree(&name, W::one(), &[leaf(e)]);
            roles.insert(name, Role::Filler { element: e });
        }
    }
    prog.registers = Some(m - 1);
    let instance = prog.build().expect("x3c construction is well formed");
    Ok(Reduction {
        instance,
        certificate: ReductionCertificate {
            kind: ReductionKind::X3c,
            source: Source::X3c(x.clone()),
            k: x.n(),
            registers: m - 1,
            mode: HoleMode::WithoutHoles,
            budget: x.n() as i64,
            alpha: None,
            beta: None,
            roles,
        },
    })
}
