//! Bounded saturation of an algebra under suspensions, cosuspensions and
//! cones, inside twisted complexes over its base.
//!
//! The input is stage 0; for an additive hull that is the untwisted sums of
//! representables. Each stage lists the chosen objects demanded by the current objects and
//! adjoins the ones the current carrier lacks; once anything is adjoined the
//! carrier is all twisted complexes, which contains every demand, so the
//! next stage adds nothing.

use rand::Rng;
use serde_json::{json, Value};

use crate::dgcat::{random_cycle, DgCat, DgFunctor, Elem};
use crate::exact::{canonical_exact, enumerate_cycles, CanonicalExact, ChoiceKind, ExactDgAlgebra};
use crate::exec::Sampler;
use crate::families::{Families, Family};
use crate::lattice::Lattice;
use crate::report::scalars_json;
use crate::twisted::{TwObj, Twisted};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    /// Finite sums of representables.
    Additive,
    /// All twisted complexes.
    Twisted,
}

/// `family ↦ ⊕ ŷ(family[i])`, the comparison `T(A) -> Tw(A)`.
pub struct FamilyEmbedding<C> {
    pub families: Families<C>,
    pub tw: Twisted<C>,
}

impl<C: DgCat + Clone> FamilyEmbedding<C> {
    pub fn new(base: C) -> FamilyEmbedding<C> {
        FamilyEmbedding {
            families: Families::new(base.clone()),
            tw: Twisted::new(base),
        }
    }
}

impl<C: DgCat> DgFunctor for FamilyEmbedding<C> {
    type Source = Families<C>;
    type Target = Twisted<C>;

    fn source(&self) -> &Families<C> {
        &self.families
    }

    fn target(&self) -> &Twisted<C> {
        &self.tw
    }

    fn map_obj(&self, x: &Family<C::Obj>) -> TwObj<C::Obj> {
        let reps: Vec<_> = x.0.iter().map(|o| self.tw.yoneda(o.clone())).collect();
        self.tw.direct_sum(&reps)
    }

    fn map_elem(&self, x: &Family<C::Obj>, y: &Family<C::Obj>, f: &Elem) -> Elem {
        let (fx, fy) = (self.map_obj(x), self.map_obj(y));
        self.tw
            .assemble(&fx, &fy, f.degree, |i, j| Some(self.families.block(x, y, f, i, j)))
    }
}

/// Starting data: twisted complexes over `base` and the level of the
/// carrier they belong to.
pub struct CompletionInput<C: DgCat> {
    pub base: C,
    pub seeds: Vec<TwObj<C::Obj>>,
    pub level: Level,
}

impl<C: DgCat + Clone> CompletionInput<C> {
    /// The additive hull of `base`, seeded with the given families.
    pub fn from_families(base: C, families: &[Family<C::Obj>]) -> CompletionInput<C> {
        let emb = FamilyEmbedding::new(base.clone());
        CompletionInput {
            seeds: families.iter().map(|f| emb.map_obj(f)).collect(),
            base,
            level: Level::Additive,
        }
    }

    /// An algebra that already carries the canonical exact structure.
    pub fn from_exact(exact: &CanonicalExact<C>, objects: Vec<TwObj<C::Obj>>) -> CompletionInput<C> {
        CompletionInput {
            base: exact.tw().base.clone(),
            seeds: objects,
            level: Level::Twisted,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CompletionConfig {
    /// Stages that may adjoin objects.
    pub budget: usize,
    pub lattice: Lattice,
    /// Enumerated cycles per ordered pair of seed objects.
    pub per_pair: usize,
    /// Pairs sampled at stages after the first.
    pub sampler: Sampler,
}

impl Default for CompletionConfig {
    fn default() -> CompletionConfig {
        CompletionConfig {
            budget: 2,
            lattice: Lattice::default(),
            per_pair: 8,
            sampler: Sampler::new(42, 100),
        }
    }
}

/// A chosen object demanded by the current objects.
#[derive(Clone, Debug, PartialEq)]
pub struct Demand<O> {
    pub kind: ChoiceKind,
    pub source: TwObj<O>,
    pub target: Option<TwObj<O>>,
    pub map: Option<Elem>,
    pub result: TwObj<O>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageRecord {
    pub stage: usize,
    pub level: Level,
    pub examined: usize,
    pub adjoined: usize,
}

pub struct Completion<C: DgCat> {
    pub exact: CanonicalExact<C>,
    pub level: Level,
    pub objects: Vec<TwObj<C::Obj>>,
    pub stages: Vec<StageRecord>,
    /// Demands left unmet when the budget ran out.
    pub deficiencies: Vec<Demand<C::Obj>>,
}

impl<C: DgCat> Completion<C> {
    pub fn complete(&self) -> bool {
        self.deficiencies.is_empty()
    }

    pub fn adjoined(&self) -> usize {
        self.stages.iter().map(|s| s.adjoined).sum()
    }

    pub fn to_json(&self) -> Value {
        let tw = self.exact.tw();
        let stages: Vec<Value> = self
            .stages
            .iter()
            .map(|s| json!({"stage": s.stage, "level": format!("{:?}", s.level), "examined": s.examined, "adjoined": s.adjoined}))
            .collect();
        let deficiencies: Vec<Value> = self
            .deficiencies
            .iter()
            .map(|d| {
                json!({
                    "kind": d.kind.name(),
                    "source": tw.describe(&d.source),
                    "target": d.target.as_ref().map(|t| tw.describe(t)),
                    "map": d.map.as_ref().map(|m| scalars_json(&m.coeffs)),
                    "missing": tw.describe(&d.result),
                })
            })
            .collect();
        json!({
            "complete": self.complete(),
            "level": format!("{:?}", self.level),
            "objects": self.objects.len(),
            "stages": stages,
            "deficiencies": deficiencies,
        })
    }
}

fn member<C: DgCat>(tw: &Twisted<C>, level: Level, m: &TwObj<C::Obj>) -> bool {
    let additive = m.twist.is_empty() && m.terms.iter().all(|(_, s)| *s == 0);
    tw.check_object(m).is_ok() && (level == Level::Twisted || additive)
}

fn shift_demands<C: DgCat>(tw: &Twisted<C>, x: &TwObj<C::Obj>) -> Vec<Demand<C::Obj>> {
    [(ChoiceKind::Suspension, 1), (ChoiceKind::Cosuspension, -1)]
        .into_iter()
        .map(|(kind, s)| Demand {
            kind,
            source: x.clone(),
            target: None,
            map: None,
            result: tw.shift_obj(x, s),
        })
        .collect()
}

fn cone_demand<C: DgCat>(tw: &Twisted<C>, x: &TwObj<C::Obj>, y: &TwObj<C::Obj>, f: Elem) -> Option<Demand<C::Obj>> {
    let result = tw.cone_obj(x, y, &f).ok()?;
    Some(Demand {
        kind: ChoiceKind::Cone,
        source: x.clone(),
        target: Some(y.clone()),
        map: Some(f),
        result,
    })
}

/// The first stage over an additive hull: every shift of a seed and every
/// enumerated cone between seeds.
fn enumerated_demands<C: DgCat>(tw: &Twisted<C>, objects: &[TwObj<C::Obj>], config: &CompletionConfig) -> Vec<Demand<C::Obj>> {
    let pairs: Vec<(usize, usize)> = (0..objects.len())
        .flat_map(|i| (0..objects.len()).map(move |j| (i, j)))
        .collect();
    let mut out: Vec<Demand<C::Obj>> = objects.iter().flat_map(|x| shift_demands(tw, x)).collect();
    for part in config.sampler.exec.map(&pairs, |&(i, j)| {
        let (x, y) = (&objects[i], &objects[j]);
        enumerate_cycles(tw, x, y, &config.lattice, config.per_pair)
            .into_iter()
            .filter_map(|f| cone_demand(tw, x, y, f))
            .collect::<Vec<_>>()
    }) {
        out.extend(part);
    }
    out
}

/// Shifts of the frontier and cones of random cycles between sampled pairs
/// with at least one frontier object.
fn sampled_demands<C: DgCat>(
    tw: &Twisted<C>,
    frontier: &[TwObj<C::Obj>],
    objects: &[TwObj<C::Obj>],
    stage: usize,
    config: &CompletionConfig,
) -> Vec<Demand<C::Obj>> {
    let mut out: Vec<Demand<C::Obj>> = frontier.iter().flat_map(|x| shift_demands(tw, x)).collect();
    let law = format!("completion-stage-{stage}");
    for d in config.sampler.run(&law, |_, rng| {
        let a = &frontier[rng.gen_range(0..frontier.len())];
        let b = &objects[rng.gen_range(0..objects.len())];
        let (x, y) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
        let f = random_cycle(tw, x, y, 0, rng);
        cone_demand(tw, x, y, f)
    }) {
        out.extend(d);
    }
    out
}

/// Runs saturation stages until one adds nothing or `budget` stages have
/// adjoined objects; in the latter case the unmet demands are returned as
/// deficiencies.
pub fn ex_completion<C: DgCat + Clone>(input: CompletionInput<C>, config: &CompletionConfig) -> Completion<C> {
    let tw = Twisted::new(input.base.clone());
    let mut objects: Vec<TwObj<C::Obj>> = Vec::new();
    for s in input.seeds {
        if !objects.contains(&s) {
            objects.push(s);
        }
    }
    let mut frontier = objects.clone();
    let mut level = input.level;
    let mut stages = Vec::new();
    let mut deficiencies = Vec::new();
    let mut stage = 1;
    loop {
        let demands = if stage == 1 && level == Level::Additive {
            enumerated_demands(&tw, &objects, config)
        } else {
            sampled_demands(&tw, &frontier, &objects, stage, config)
        };
        let examined = demands.len();
        let mut missing: Vec<Demand<C::Obj>> = Vec::new();
        for d in demands {
            if !member(&tw, level, &d.result) && !missing.iter().any(|m| m.result == d.result) {
                missing.push(d);
            }
        }
        if missing.is_empty() || frontier.is_empty() {
            stages.push(StageRecord {
                stage,
                level,
                examined,
                adjoined: 0,
            });
            break;
        }
        if stage > config.budget {
            deficiencies = missing;
            break;
        }
        level = Level::Twisted;
        let fresh: Vec<TwObj<C::Obj>> = missing
            .into_iter()
            .map(|d| d.result)
            .filter(|r| !objects.contains(r))
            .collect();
        stages.push(StageRecord {
            stage,
            level,
            examined,
            adjoined: fresh.len(),
        });
        objects.extend(fresh.iter().cloned());
        frontier = fresh;
        stage += 1;
    }
    Completion {
        exact: canonical_exact(input.base),
        level,
        objects,
        stages,
        deficiencies,
    }
}

impl<C: DgCat + Clone> Completion<C> {
    /// Runs the completion again on its own output.
    pub fn rerun(&self, config: &CompletionConfig) -> Completion<C> {
        let input = CompletionInput {
            base: self.exact.tw().base.clone(),
            seeds: self.objects.clone(),
            level: self.level,
        };
        ex_completion(input, config)
    }

    pub fn exact(&self) -> &CanonicalExact<C> {
        &self.exact
    }

    /// Whether the carrier has all chosen objects of `x`.
    pub fn closed_under_choices(&self, x: &TwObj<C::Obj>) -> bool {
        let e = &self.exact;
        self.level == Level::Twisted
            && [e.suspension(x), e.cosuspension(x)]
                .iter()
                .all(|c| c.as_ref().map(|c| member(e.tw(), self.level, &c.object)).unwrap_or(false))
    }
}
