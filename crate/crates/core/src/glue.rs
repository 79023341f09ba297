//! The glued space `Z = Y ∪ ω`: each compact set `K_α` of the Cantor cube is
//! collapsed to a single point `α`, and `Y` (points with tail `0,1,0,1,…`)
//! keeps its subspace topology.
//!
//! A glued point `α` has the neighbourhoods `{α} ∪ (W ∩ Y)` for open
//! `W ⊇ K_α`. `K_α` is finite and every finite union of boxes is clopen, so
//! `α` lies in the closure of an open set with box trace `U` exactly when
//! `K_α` meets `U`. That turns every closure question here into a finite
//! check on boxes.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::points::{Class, ClopenBox, CubePoint};
use crate::ParseError;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GlueError {
    #[error("malformed generator A({alpha};{m}): need m > alpha")]
    MalformedGenerator { alpha: usize, m: usize },
    #[error("the open set is empty")]
    EmptyOpen,
    #[error("points coincide")]
    SamePoint,
    #[error("the all-zero point is not part of the glued space")]
    ZeroPoint,
    #[error("point {0} does not lie in Y")]
    NotInY(CubePoint),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GluePoint {
    Y(CubePoint),
    Glued(usize),
}

impl GluePoint {
    pub fn y(p: CubePoint) -> Result<Self, GlueError> {
        match p.classify() {
            Class::InY => Ok(GluePoint::Y(p)),
            _ => Err(GlueError::NotInY(p)),
        }
    }

    /// Image of a cube point under the quotient map collapsing each `K_α`.
    pub fn project(p: CubePoint) -> Result<Self, GlueError> {
        match p.classify() {
            Class::InY => Ok(GluePoint::Y(p)),
            Class::InK(alpha) => Ok(GluePoint::Glued(alpha)),
            Class::ZeroPoint => Err(GlueError::ZeroPoint),
        }
    }
}

impl fmt::Display for GluePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GluePoint::Y(p) => write!(f, "Y:{p}"),
            GluePoint::Glued(a) => write!(f, "G:{a}"),
        }
    }
}

impl FromStr for GluePoint {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(a) = s.strip_prefix("G:") {
            return a.parse().map(GluePoint::Glued).map_err(|_| ParseError::new("glued point", s));
        }
        let p: CubePoint = s.strip_prefix("Y:").unwrap_or(s).parse()?;
        GluePoint::y(p).map_err(|_| ParseError::new("Y point", s))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `b ∩ Y`
    Y(ClopenBox),
    /// `{α} ∪ (Box(α;m) ∩ Y)`, with `m > α`
    A { alpha: usize, m: usize },
}

impl Generator {
    /// The box whose `Y`-trace this generator contributes.
    pub fn trace_box(&self) -> ClopenBox {
        match self {
            Generator::Y(b) => b.clone(),
            Generator::A { alpha, m } => ClopenBox::glue_window(*alpha, *m),
        }
    }

    pub fn glued(&self) -> Option<usize> {
        match self {
            Generator::A { alpha, .. } => Some(*alpha),
            Generator::Y(_) => None,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Y(b) => write!(f, "Y{b}"),
            Generator::A { alpha, m } => write!(f, "A({alpha};{m})"),
        }
    }
}

/// A finitely generated open set of the glued space.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GlueOpen {
    generators: Vec<Generator>,
}

impl GlueOpen {
    /// Validates and deduplicates generators (first occurrence kept).
    pub fn new(gens: Vec<Generator>) -> Result<Self, GlueError> {
        let mut generators: Vec<Generator> = Vec::with_capacity(gens.len());
        for g in gens {
            if let Generator::A { alpha, m } = g {
                if m <= alpha {
                    return Err(GlueError::MalformedGenerator { alpha, m });
                }
            }
            if !generators.contains(&g) {
                generators.push(g);
            }
        }
        Ok(GlueOpen { generators })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Every box is nonempty on the dense set `Y`, so only the empty list is
    /// empty.
    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn trace_boxes(&self) -> impl Iterator<Item = ClopenBox> + '_ {
        self.generators.iter().map(Generator::trace_box)
    }

    pub fn glued_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.generators.iter().filter_map(Generator::glued)
    }

    pub fn contains(&self, p: &GluePoint) -> bool {
        match p {
            GluePoint::Y(x) => self.trace_boxes().any(|b| b.contains(x)),
            GluePoint::Glued(a) => self.glued_points().any(|g| g == *a),
        }
    }

    pub fn closure_contains(&self, p: &GluePoint) -> bool {
        match p {
            // the box trace is clopen in Y
            GluePoint::Y(x) => self.trace_boxes().any(|b| b.contains(x)),
            GluePoint::Glued(gamma) => {
                self.glued_points().any(|g| g == *gamma)
                    || self.trace_boxes().any(|b| k_meets_box(*gamma, &b))
            }
        }
    }

    /// Least `n` from the per-box bound `1 + max(dom ε)`; every glued point
    /// at or above it lies in the closure.
    pub fn closure_tail_bound(&self) -> Result<usize, GlueError> {
        self.trace_boxes()
            .map(|b| b.max_index().map_or(0, |m| m + 1))
            .min()
            .ok_or(GlueError::EmptyOpen)
    }

    /// Generator-wise inclusion.
    pub fn is_subfamily_of(&self, other: &GlueOpen) -> bool {
        self.generators.iter().all(|g| other.generators.contains(g))
    }
}

/// Whether `K_γ = { x : x(γ)=1, x(β)=0 for β>γ }` meets the box.
pub fn k_meets_box(gamma: usize, b: &ClopenBox) -> bool {
    b.get(gamma) != Some(false) && b.iter().all(|(beta, bit)| beta <= gamma || !bit)
}

impl fmt::Display for GlueOpen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for GlueOpen {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut gens = Vec::new();
        for part in s.split('|').map(str::trim).filter(|p| !p.is_empty()) {
            if let Some(b) = part.strip_prefix('Y') {
                gens.push(Generator::Y(b.parse()?));
            } else if let Some(body) = part.strip_prefix("A(").and_then(|r| r.strip_suffix(')')) {
                let (a, m) = body.split_once(';').ok_or(ParseError::new("A generator", part))?;
                let alpha = a.trim().parse().map_err(|_| ParseError::new("A generator", part))?;
                let m = m.trim().parse().map_err(|_| ParseError::new("A generator", part))?;
                gens.push(Generator::A { alpha, m });
            } else {
                return Err(ParseError::new("generator", part));
            }
        }
        GlueOpen::new(gens).map_err(|_| ParseError::new("open set (m must exceed alpha)", s))
    }
}

/// The least glued point lying in the closure of every open in the list.
pub fn rc_intersection_witness(opens: &[GlueOpen]) -> Result<GluePoint, GlueError> {
    let mut gamma = 0;
    if opens.is_empty() {
        return Err(GlueError::EmptyOpen);
    }
    for v in opens {
        gamma = gamma.max(v.closure_tail_bound()?);
    }
    let w = GluePoint::Glued(gamma);
    debug_assert!(opens.iter().all(|v| v.closure_contains(&w)));
    Ok(w)
}

/// Disjoint open neighbourhoods of two distinct points.
pub fn hausdorff_witness(p: &GluePoint, q: &GluePoint) -> Result<(GlueOpen, GlueOpen), GlueError> {
    use GluePoint::*;
    let single = |g: Generator| GlueOpen { generators: alloc::vec![g] };
    match (p, q) {
        _ if p == q => Err(GlueError::SamePoint),
        (Glued(a), Glued(b)) => {
            // Box(lo; hi+1) has x(hi)=0 while Box(hi; hi+1) has x(hi)=1
            let m = *a.max(b) + 1;
            Ok((single(Generator::A { alpha: *a, m }), single(Generator::A { alpha: *b, m })))
        }
        (Y(x), Y(y)) => {
            let i = x.first_difference(y).ok_or(GlueError::SamePoint)?;
            Ok((
                single(Generator::Y(ClopenBox::from_pairs([(i, x.eval(i))]))),
                single(Generator::Y(ClopenBox::from_pairs([(i, y.eval(i))]))),
            ))
        }
        (Y(x), Glued(alpha)) => {
            let (yo, ao) = separate_y_from_glued(x, *alpha);
            Ok((single(yo), single(ao)))
        }
        (Glued(alpha), Y(x)) => {
            let (yo, ao) = separate_y_from_glued(x, *alpha);
            Ok((single(ao), single(yo)))
        }
    }
}

fn separate_y_from_glued(x: &CubePoint, alpha: usize) -> (Generator, Generator) {
    // x has infinitely many ones, so some β > α carries a 1; Box(α;β) forces 0 there.
    let beta = (alpha + 1..).find(|&i| x.eval(i)).expect("Y points have infinitely many ones");
    let ybox = ClopenBox::from_pairs((alpha..=beta).map(|i| (i, x.eval(i))));
    (Generator::Y(ybox), Generator::A { alpha, m: beta })
}

/// Checks that two generator lists are disjoint by a symbolic argument:
/// no shared glued point and pairwise incompatible trace boxes.
pub fn symbolically_disjoint(u: &GlueOpen, v: &GlueOpen) -> bool {
    let glued_clash = u.glued_points().any(|a| v.glued_points().any(|b| a == b));
    !glued_clash && u.trace_boxes().all(|b1| v.trace_boxes().all(|b2| !b1.compatible(&b2)))
}
