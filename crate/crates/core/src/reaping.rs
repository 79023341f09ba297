//! Round-robin reapers and the one-point extension ladder `D_0, D_1, …`.
//!
//! Infinite sets are handled through enumerations: an [`EnumSet`] produces
//! its elements in a fixed order and answers membership. "Infinite" is
//! replaced by productivity: a set asked for `k` elements must deliver them
//! within a bounded number of enumeration steps.
//!
//! A reaper decides elements one at a time, visiting the family members'
//! enumerations round-robin and keeping every member balanced between the
//! inside and the outside of `D`.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

pub mod sets;

/// Enumeration steps allowed per requested element, on top of a fixed slack.
pub const RAW_STEPS_PER_ELEMENT: usize = 256;
pub const RAW_STEPS_SLACK: usize = 4096;

pub fn raw_limit(wanted: usize) -> usize {
    wanted.saturating_mul(RAW_STEPS_PER_ELEMENT).saturating_add(RAW_STEPS_SLACK)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ReapError {
    #[error("set {name} produced {got} of {wanted} elements within {steps} steps")]
    ProductivityViolation { name: String, wanted: usize, got: usize, steps: usize },
    #[error("reaper left {set} unsplit: {inside} inside, {outside} outside, budget {budget}")]
    NotSplit { set: String, inside: usize, outside: usize, budget: usize },
    #[error("at least one stage is required")]
    NoStages,
}

type Stream<E> = Box<dyn Iterator<Item = Option<E>>>;

/// A set with an enumeration and a membership test.
///
/// The stream yields `Some(x)` for each element and `None` for an
/// enumeration step that produced nothing (a filtered-out candidate), so
/// that callers can bound the work spent looking for the next element.
pub struct EnumSet<E> {
    name: Rc<str>,
    stream: Rc<dyn Fn() -> Stream<E>>,
    member: Rc<dyn Fn(&E) -> bool>,
}

impl<E> Clone for EnumSet<E> {
    fn clone(&self) -> Self {
        EnumSet { name: self.name.clone(), stream: self.stream.clone(), member: self.member.clone() }
    }
}

impl<E> fmt::Debug for EnumSet<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("EnumSet").field(&self.name).finish()
    }
}

impl<E: Clone + Ord + 'static> EnumSet<E> {
    pub fn from_stream<S, M>(name: &str, stream: S, member: M) -> Self
    where
        S: Fn() -> Stream<E> + 'static,
        M: Fn(&E) -> bool + 'static,
    {
        EnumSet { name: name.into(), stream: Rc::new(stream), member: Rc::new(member) }
    }

    /// A set given by an injective generator `n ↦ x_n`.
    pub fn generated<G, M>(name: &str, generator: G, member: M) -> Self
    where
        G: Fn(u64) -> E + 'static,
        M: Fn(&E) -> bool + 'static,
    {
        let generator = Rc::new(generator);
        Self::from_stream(
            name,
            move || {
                let g = generator.clone();
                Box::new((0u64..).map(move |n| Some(g(n))))
            },
            member,
        )
    }

    /// A finite set enumerated in the given order.
    pub fn from_list(name: &str, items: Vec<E>) -> Self {
        let items = Rc::new(items);
        let lookup = items.clone();
        Self::from_stream(
            name,
            move || {
                let items = items.clone();
                Box::new((0..items.len()).map(move |i| Some(items[i].clone())))
            },
            move |x| lookup.contains(x),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn contains(&self, x: &E) -> bool {
        (self.member)(x)
    }

    pub fn stream(&self) -> Stream<E> {
        (self.stream)()
    }

    /// Elements of `self` satisfying `pred`, in `self`'s order.
    pub fn filter<P>(&self, name: &str, pred: P) -> Self
    where
        P: Fn(&E) -> bool + 'static,
    {
        let pred = Rc::new(pred);
        let base = self.clone();
        let p2 = pred.clone();
        let m = self.member.clone();
        Self::from_stream(
            name,
            move || {
                let p = pred.clone();
                Box::new(base.stream().map(move |s| s.filter(|x| p(x))))
            },
            move |x| m(x) && p2(x),
        )
    }

    pub fn intersect(&self, other: &EnumSet<E>) -> Self {
        let o = other.clone();
        self.filter(&format!("{}∩{}", self.name, other.name), move |x| o.contains(x))
    }

    /// Up to `k` elements, spending at most `raw` enumeration steps.
    pub fn first(&self, k: usize, raw: usize) -> Vec<E> {
        self.stream().take(raw).flatten().take(k).collect()
    }

    /// Exactly `k` elements, or a productivity violation.
    pub fn take_productive(&self, k: usize) -> Result<Vec<E>, ReapError> {
        let steps = raw_limit(k);
        let got = self.first(k, steps);
        if got.len() < k {
            return Err(ReapError::ProductivityViolation {
                name: self.name.to_string(),
                wanted: k,
                got: got.len(),
                steps,
            });
        }
        Ok(got)
    }
}

/// One reaper `D`, as the finite record of the decisions it made.
#[derive(Clone)]
pub struct Ladder<E> {
    decisions: Rc<BTreeMap<E, bool>>,
    inside: Rc<Vec<E>>,
    /// For each family member, the window of its elements the reaper
    /// examined, in its own enumeration order. All of them are decided.
    examined: Vec<Rc<Vec<E>>>,
    forbidden: Option<E>,
    name: Rc<str>,
}

impl<E: Clone + Ord + fmt::Debug + 'static> Ladder<E> {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// `Some(true)` inside, `Some(false)` outside, `None` undecided.
    pub fn decision(&self, x: &E) -> Option<bool> {
        self.decisions.get(x).copied()
    }

    pub fn is_inside(&self, x: &E) -> bool {
        self.decision(x) == Some(true)
    }

    pub fn is_outside(&self, x: &E) -> bool {
        self.decision(x) == Some(false)
    }

    pub fn forbidden(&self) -> Option<&E> {
        self.forbidden.as_ref()
    }

    pub fn decided(&self) -> usize {
        self.decisions.len()
    }

    /// `D` itself, enumerated in decision order.
    pub fn set(&self) -> EnumSet<E> {
        let inside = self.inside.clone();
        let decisions = self.decisions.clone();
        EnumSet::from_stream(
            &self.name,
            move || {
                let v = inside.clone();
                Box::new((0..v.len()).map(move |i| Some(v[i].clone())))
            },
            move |x| decisions.get(x) == Some(&true),
        )
    }

    /// First `n` elements of `D` in decision order.
    pub fn prefix(&self, n: usize) -> &[E] {
        &self.inside[..n.min(self.inside.len())]
    }

    /// The piece `C ∩ D` (when `inside`) or `C ∖ D` of the `i`-th family
    /// member, over the elements the reaper examined for it.
    pub fn piece(&self, i: usize, member: &EnumSet<E>, inside: bool) -> EnumSet<E> {
        let examined = self.examined[i].clone();
        let decisions = self.decisions.clone();
        let d2 = self.decisions.clone();
        let m = member.clone();
        let name = format!("({}{}{})", member.name(), if inside { "∩" } else { "∖" }, self.name);
        EnumSet::from_stream(
            &name,
            move || {
                let ex = examined.clone();
                let dec = decisions.clone();
                Box::new((0..ex.len()).map(move |k| {
                    let x = &ex[k];
                    (dec.get(x) == Some(&inside)).then(|| x.clone())
                }))
            },
            move |x| d2.get(x) == Some(&inside) && m.contains(x),
        )
    }
}

impl<E> fmt::Debug for Ladder<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ladder")
            .field("name", &self.name)
            .field("decided", &self.decisions.len())
            .field("inside", &self.inside.len())
            .finish()
    }
}

struct Decider<'a, E> {
    balance: Vec<i64>,
    decisions: BTreeMap<E, bool>,
    inside: Vec<E>,
    owners: &'a BTreeMap<E, Vec<usize>>,
}

impl<E: Clone + Ord> Decider<'_, E> {
    fn decide(&mut self, x: &E, bit: bool) {
        for &k in self.owners.get(x).map(Vec::as_slice).unwrap_or(&[]) {
            self.balance[k] += if bit { 1 } else { -1 };
        }
        if bit {
            self.inside.push(x.clone());
        }
        self.decisions.insert(x.clone(), bit);
    }
}

/// Builds a reaper for `family` over the ground enumeration `ground`.
///
/// Each member contributes a window: its first `rounds` elements. Windows
/// are visited round-robin (element `r` of every window in round `r`), and
/// each undecided element goes to whichever side lowers the total
/// inside-minus-outside balance of the windows containing it; ties flip the
/// previous decision. The ground set takes part as the first window, so with
/// an empty family `D` is every second element of the ground set.
/// `forbidden` is decided outside before anything else.
///
/// Fails if a member is not infinite to budget, or does not end with
/// `budget` elements on each side within its window.
pub fn split_all<E: Clone + Ord + fmt::Debug + 'static>(
    ground: &EnumSet<E>,
    family: &[EnumSet<E>],
    budget: usize,
    rounds: usize,
    forbidden: Option<E>,
    name: &str,
) -> Result<Ladder<E>, ReapError> {
    for c in family {
        c.take_productive(2 * budget)?;
    }
    let windows: Vec<Vec<E>> = core::iter::once(ground)
        .chain(family)
        .map(|c| c.first(rounds, raw_limit(rounds)))
        .collect();
    let mut owners: BTreeMap<E, Vec<usize>> = BTreeMap::new();
    for (i, w) in windows.iter().enumerate() {
        for x in w {
            owners.entry(x.clone()).or_default().push(i);
        }
    }
    let mut state = Decider {
        balance: alloc::vec![0i64; windows.len()],
        decisions: BTreeMap::new(),
        inside: Vec::new(),
        owners: &owners,
    };
    if let Some(f) = &forbidden {
        state.decide(f, false);
    }
    let mut last = false;
    let longest = windows.iter().map(Vec::len).max().unwrap_or(0);
    for r in 0..longest {
        for w in &windows {
            let Some(x) = w.get(r) else { continue };
            if state.decisions.contains_key(x) {
                continue;
            }
            let pressure: i64 = owners[x].iter().map(|&k| state.balance[k]).sum();
            let bit = match pressure.cmp(&0) {
                core::cmp::Ordering::Less => true,
                core::cmp::Ordering::Greater => false,
                core::cmp::Ordering::Equal => !last,
            };
            state.decide(x, bit);
            last = bit;
        }
    }
    let Decider { decisions, inside, .. } = state;

    let ladder = Ladder {
        decisions: Rc::new(decisions),
        inside: Rc::new(inside),
        examined: windows.into_iter().skip(1).map(Rc::new).collect(),
        forbidden,
        name: name.into(),
    };
    for (i, c) in family.iter().enumerate() {
        let (inn, out) = ladder.split_counts(i);
        if inn < budget || out < budget {
            return Err(ReapError::NotSplit { set: c.name().to_string(), inside: inn, outside: out, budget });
        }
    }
    Ok(ladder)
}

impl<E: Clone + Ord + fmt::Debug + 'static> Ladder<E> {
    /// Inside/outside counts over the elements examined for member `i`.
    pub fn split_counts(&self, i: usize) -> (usize, usize) {
        let mut counts = (0, 0);
        for x in self.examined[i].iter() {
            match self.decisions.get(x) {
                Some(true) => counts.0 += 1,
                Some(false) => counts.1 += 1,
                None => {}
            }
        }
        counts
    }
}

/// Bounds for one run of the extension ladder.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReapConfig {
    /// Each member of `𝒞_m` must end with this many elements on both sides
    /// of `D_m`; a set counts as infinite when it yields twice this many.
    pub budget: usize,
    /// Decisions per cursor, i.e. rounds of the reaper.
    pub rounds: usize,
}

/// What the enlarged topology is generated by, for `stages` ladders.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Subbase {
    pub point: usize,
    pub stages: usize,
}

impl fmt::Display for Subbase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tau ∪ {{X∖D_n : n<{s}}} ∪ {{{{p{p}}}∪D_n : n<{s}}}",
            s = self.stages,
            p = self.point
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageReport {
    pub stage: usize,
    pub family_size: usize,
    /// `u_m`, formatted.
    pub excluded: String,
    pub excluded_ok: bool,
    pub min_inside: usize,
    pub min_outside: usize,
    pub pieces_kept: usize,
    pub pieces_dropped: usize,
}

impl StageReport {
    pub fn ok(&self, budget: usize) -> bool {
        self.excluded_ok && self.min_inside >= budget && self.min_outside >= budget
    }
}

/// The ladders `D_0, …, D_{n−1}`, the initial family `𝒞_0`, and the new
/// point they attach.
pub struct ExtensionResult<E> {
    pub ladders: Vec<Ladder<E>>,
    pub initial_family: Vec<EnumSet<E>>,
    pub family_sizes: Vec<usize>,
    pub stages: Vec<StageReport>,
    pub new_point: usize,
    pub subbase: Subbase,
    pub config: ReapConfig,
}

/// Input of one extension step.
pub struct OneStep<'a, E> {
    pub ground: &'a EnumSet<E>,
    pub i: &'a EnumSet<E>,
    pub j: &'a EnumSet<E>,
    pub pairs: &'a [(E, EnumSet<E>)],
    pub base: &'a [EnumSet<E>],
}

/// Assembles `𝒞_0 = {I, J} ∪ {B ∩ U} ∪ {A_i ∩ B ∩ U}`, keeping the
/// members that are infinite to budget.
pub fn initial_family<E: Clone + Ord + fmt::Debug + 'static>(
    input: &OneStep<'_, E>,
    budget: usize,
) -> Vec<EnumSet<E>> {
    let mut cands = alloc::vec![input.i.clone(), input.j.clone()];
    for b in input.base {
        cands.push(b.intersect(input.ground));
    }
    for (_, a) in input.pairs {
        for b in input.base {
            cands.push(a.intersect(b).intersect(input.ground));
        }
    }
    cands.into_iter().filter(|c| c.take_productive(2 * budget).is_ok()).collect()
}

/// Runs `stages` steps of the `D_n` recursion:
/// `D_n` avoids `u_n` and reaps `𝒞_n`, and
/// `𝒞_{n+1} = 𝒞_n ∪ {C ∩ D_n, C ∖ D_n : C ∈ 𝒞_n}` (pieces kept when
/// infinite to budget).
pub fn run_one_step<E: Clone + Ord + fmt::Debug + fmt::Display + 'static>(
    input: &OneStep<'_, E>,
    stages: usize,
    config: ReapConfig,
    new_point: usize,
) -> Result<ExtensionResult<E>, ReapError> {
    if stages == 0 {
        return Err(ReapError::NoStages);
    }
    let c0 = initial_family(input, config.budget);
    let mut family = c0.clone();
    let mut ladders = Vec::with_capacity(stages);
    let mut reports = Vec::with_capacity(stages);
    let mut sizes = Vec::with_capacity(stages);
    let ground: Vec<E> = input.ground.first(stages, raw_limit(stages));
    for m in 0..stages {
        let u_m = ground.get(m).cloned().ok_or(ReapError::ProductivityViolation {
            name: input.ground.name().to_string(),
            wanted: stages,
            got: ground.len(),
            steps: raw_limit(stages),
        })?;
        let d = split_all(input.ground, &family, config.budget, config.rounds, Some(u_m.clone()), &format!("D{m}"))?;
        let (mut min_in, mut min_out) = (usize::MAX, usize::MAX);
        for i in 0..family.len() {
            let (a, b) = d.split_counts(i);
            min_in = min_in.min(a);
            min_out = min_out.min(b);
        }
        sizes.push(family.len());
        let mut next = family.clone();
        let (mut kept, mut dropped) = (0, 0);
        for (i, c) in family.iter().enumerate() {
            for inside in [true, false] {
                let piece = d.piece(i, c, inside);
                if piece.first(2 * config.budget, usize::MAX).len() >= 2 * config.budget {
                    next.push(piece);
                    kept += 1;
                } else {
                    dropped += 1;
                }
            }
        }
        reports.push(StageReport {
            stage: m,
            family_size: family.len(),
            excluded: format!("{u_m}"),
            excluded_ok: !d.is_inside(&u_m),
            min_inside: if family.is_empty() { 0 } else { min_in },
            min_outside: if family.is_empty() { 0 } else { min_out },
            pieces_kept: kept,
            pieces_dropped: dropped,
        });
        ladders.push(d);
        family = next;
    }
    Ok(ExtensionResult {
        ladders,
        initial_family: c0,
        family_sizes: sizes,
        stages: reports,
        new_point,
        subbase: Subbase { point: new_point, stages },
        config,
    })
}

impl<E: Clone + Ord + fmt::Debug + 'static> ExtensionResult<E> {
    /// Whether `|A ∩ D_0 ∩ … ∩ D_{n−1}| ≥ t` among the first `scan`
    /// elements of `A`.
    pub fn closure_progress(&self, a: &EnumSet<E>, t: usize, scan: usize) -> bool {
        self.count_trace(a, &BTreeMap::from_iter((0..self.ladders.len()).map(|n| (n, true))), scan) >= t
    }

    /// Number of elements among the first `scan` of `c` lying in
    /// `D_ε = ⋂_{ε(n)=1} D_n ∩ ⋂_{ε(n)=0} (X ∖ D_n)`.
    pub fn count_trace(&self, c: &EnumSet<E>, eps: &BTreeMap<usize, bool>, scan: usize) -> usize {
        self.count_trace_in(&c.first(scan, raw_limit(scan)), eps)
    }

    /// [`count_trace`](Self::count_trace) over an already enumerated prefix.
    pub fn count_trace_in(&self, prefix: &[E], eps: &BTreeMap<usize, bool>) -> usize {
        prefix
            .iter()
            .filter(|x| {
                eps.iter().all(|(&n, &bit)| {
                    self.ladders.get(n).is_some_and(|d| d.decision(x) == Some(bit))
                })
            })
            .count()
    }

    pub fn check_dense_trace(
        &self,
        c: &EnumSet<E>,
        eps: &BTreeMap<usize, bool>,
        t: usize,
        scan: usize,
    ) -> bool {
        self.count_trace(c, eps, scan) >= t
    }

    /// A stage `n` with `x = u_n`, whose `X ∖ D_n` and `{p} ∪ D_n`
    /// separate `x` from the new point.
    pub fn separating_stage(&self, x: &E) -> Option<usize> {
        self.ladders.iter().position(|d| d.forbidden() == Some(x))
    }

    pub fn all_stages_ok(&self) -> bool {
        self.stages.iter().all(|s| s.ok(self.config.budget))
    }
}

/// Successive one-point extensions; the `k`-th step attaches point `k`.
pub struct ExtensionChain<E> {
    pub steps: Vec<ExtensionResult<E>>,
}

impl<E: Clone + Ord + fmt::Debug + fmt::Display + 'static> ExtensionChain<E> {
    pub fn new() -> Self {
        ExtensionChain { steps: Vec::new() }
    }

    pub fn extend(
        &mut self,
        input: &OneStep<'_, E>,
        stages: usize,
        config: ReapConfig,
    ) -> Result<&ExtensionResult<E>, ReapError> {
        let r = run_one_step(input, stages, config, self.steps.len())?;
        self.steps.push(r);
        Ok(self.steps.last().expect("just pushed"))
    }
}

impl<E: Clone + Ord + fmt::Debug + fmt::Display + 'static> Default for ExtensionChain<E> {
    fn default() -> Self {
        Self::new()
    }
}
