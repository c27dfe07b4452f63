use std::collections::BTreeMap;

use super::{CoverInstance, Reduction, ReductionCertificate, ReductionError, ReductionKind, Role, Source};
use crate::model::{HoleMode, Program};
use crate::weight::Weight;

/// Basic block with one point per ground element. Member `i` becomes `s{i}`,
/// live through the whole block, used (a chad) at every point outside the
/// member. With holes, spilling `s{i}` relieves exactly the points of member
/// `i`, so `K` spills reach `|family| − 1` iff `K` members cover the ground.
pub fn gen_mincover<W: Weight>(c: &CoverInstance) -> Result<Reduction<W>, ReductionError> {
    c.check()?;
    let f = c.family.len();
    let names: Vec<String> = (0..f).map(|i| format!("s{i}")).collect();
    let mut prog = Program::linear_code(c.ground as u32);
    for p in 0..c.ground {
        let uses: Vec<&str> = (0..f)
            .filter(|&i| !c.family[i].contains(&p))
            .map(|i| names[i].as_str())
            .collect();
        if !uses.is_empty() {
            prog = prog.instr(p as u32 + 1, &uses, &[]);
        }
    }
    let all: Vec<&str> = names.iter().map(String::as_str).collect();
    prog = prog.live_in(&all).live_out(&all);
    let mut roles = BTreeMap::new();
    for (i, name) in names.iter().enumerate() {
        prog = prog.var(name, W::one());
        roles.insert(name.clone(), Role::Member { index: i });
    }
    prog.registers = Some(f - 1);
    let instance = prog.build().expect("cover construction is well formed");
    Ok(Reduction {
        instance,
        certificate: ReductionCertificate {
            kind: ReductionKind::Mincover,
            source: Source::Cover(c.clone()),
            k: c.bound,
            registers: f - 1,
            mode: HoleMode::WithHoles,
            budget: c.bound as i64,
            alpha: None,
            beta: None,
            roles,
        },
    })
}
