//! `h^0` by restriction to the exceptional divisor over the point of largest
//! multiplicity.
//!
//! For `D = dH - sum m_i E_i` with `s >= n + 3`,
//!
//! ```text
//! h^0(D) = h^0(D + E_1) - h^0(l(D + E_1) - k_C(D + E_1)^+ E_q)
//! ```
//!
//! where `l(D) = m_1 H - sum_{i >= 2} (m_1 + m_i - d) E_i` lives on the
//! blow-up of `P^{n-1}` at the projected points, and `q` is the image of the
//! curve. Descending on `m_1` ends at the few-points sum (`s <= n + 2`), the
//! planar formula (`n = 2`) or the line (`n = 1`).

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::Zero;
use parking_lot::{Mutex, RwLock};

use crate::error::{Error, Result};
use crate::formula::{compute_kc, ldim, planar_h0};
use crate::system::{normalize, LinearSystemSpec, NormalizedSystem};

/// `l(D)` together with the multiplicity of the extra point `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    /// Degree `m_1`, multiplicities `m_1 + m_i - d` for `i >= 2`.
    pub spec: LinearSystemSpec,
    /// `k_C(D)^+`.
    pub q: i64,
}

impl Projection {
    /// The projected system with `q` listed first.
    pub fn with_q(&self) -> LinearSystemSpec {
        let mut mults = Vec::with_capacity(self.spec.s() + 1);
        mults.push(self.q);
        mults.extend_from_slice(self.spec.mults());
        LinearSystemSpec::new(self.spec.n(), self.spec.d(), mults).expect("n >= 2")
    }
}

/// Projects from the first point. Needs `n >= 3` and `s >= n + 3`.
pub fn l_map(spec: &LinearSystemSpec) -> Result<Projection> {
    let n = spec.n();
    if n < 3 {
        return Err(Error::Precondition(format!(
            "projection needs n >= 3 (got n = {n})"
        )));
    }
    let kc = compute_kc(n, spec.d(), spec.mults())?;
    let m1 = spec.mults()[0];
    let mults = spec.mults()[1..]
        .iter()
        .map(|&m| m1 + m - spec.d())
        .collect();
    Ok(Projection {
        spec: LinearSystemSpec::new(n - 1, m1, mults)?,
        q: kc.max(0),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecursionOptions {
    /// Longest allowed chain of `+E_1` and projection edges.
    pub max_depth: usize,
    pub memoize: bool,
    pub trace: bool,
}

impl Default for RecursionOptions {
    fn default() -> Self {
        RecursionOptions {
            max_depth: 100_000,
            memoize: true,
            trace: false,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RecursionStats {
    pub nodes: usize,
    pub memo_hits: usize,
    pub max_depth: usize,
}

/// Which rule produced a node's value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Empty,
    FewPoints,
    Planar,
    Line,
    Memo,
    Step,
}

impl NodeKind {
    fn name(self) -> &'static str {
        match self {
            NodeKind::Empty => "empty",
            NodeKind::FewPoints => "ldim",
            NodeKind::Planar => "planar",
            NodeKind::Line => "line",
            NodeKind::Memo => "memo",
            NodeKind::Step => "step",
        }
    }
}

/// One evaluated system in the recursion tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceNode {
    pub label: &'static str,
    pub n: u32,
    pub d: i64,
    pub mults: Vec<i64>,
    pub value: BigInt,
    pub kind: NodeKind,
    pub children: Vec<TraceNode>,
}

impl TraceNode {
    fn render(&self, depth: usize, out: &mut String) {
        let mults: Vec<String> = self.mults.iter().map(i64::to_string).collect();
        let _ = writeln!(
            out,
            "{:indent$}{} n={} d={} m=[{}] h0={} ({})",
            "",
            self.label,
            self.n,
            self.d,
            mults.join(","),
            self.value,
            self.kind.name(),
            indent = 2 * depth
        );
        for child in &self.children {
            child.render(depth + 1, out);
        }
    }
}

impl fmt::Display for TraceNode {
    /// One node per line, indented two spaces per level.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.render(0, &mut out);
        f.write_str(&out)
    }
}

type Key = (u32, i64, Vec<i64>);

/// Evaluator state: the memo table and counters. Safe to share between
/// threads; values do not depend on evaluation order.
#[derive(Debug, Default)]
pub struct Recursion {
    options: RecursionOptions,
    memo: RwLock<HashMap<Key, BigInt>>,
    stats: Mutex<RecursionStats>,
}

enum Resolved {
    Done(BigInt, NodeKind),
    Descend(NormalizedSystem),
}

impl Recursion {
    pub fn new(options: RecursionOptions) -> Self {
        Recursion {
            options,
            ..Default::default()
        }
    }

    pub fn stats(&self) -> RecursionStats {
        *self.stats.lock()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.read().len()
    }

    pub fn h0(&self, spec: &LinearSystemSpec) -> Result<BigInt> {
        Ok(self.eval(spec, 0, "root")?.0)
    }

    /// `h^0` and the recursion tree (empty children unless tracing is on).
    pub fn h0_traced(&self, spec: &LinearSystemSpec) -> Result<(BigInt, TraceNode)> {
        self.eval(spec, 0, "root")
    }

    /// Base cases, memo lookups, or the normalized system to descend on.
    fn resolve(&self, spec: &LinearSystemSpec) -> Result<(Resolved, NormalizedSystem)> {
        let sys = normalize(spec);
        let n = sys.n();
        if sys.d() < 0 || sys.exceeds_degree() {
            return Ok((Resolved::Done(BigInt::zero(), NodeKind::Empty), sys));
        }
        if self.options.memoize {
            if let Some(v) = self.memo.read().get(&key_of(&sys)) {
                self.stats.lock().memo_hits += 1;
                return Ok((Resolved::Done(v.clone(), NodeKind::Memo), sys));
            }
        }
        let done = if n == 1 {
            let sum: i64 = sys.mults().iter().sum();
            Some((BigInt::from((sys.d() + 1 - sum).max(0)), NodeKind::Line))
        } else if (sys.s() as i64) <= i64::from(n) + 2 {
            Some((ldim(n, sys.d(), sys.mults())?, NodeKind::FewPoints))
        } else if n == 2 {
            Some((planar_h0(&sys)?, NodeKind::Planar))
        } else {
            None
        };
        Ok(match done {
            Some((v, kind)) => (Resolved::Done(v, kind), sys.clone()),
            None => (Resolved::Descend(sys.clone()), sys),
        })
    }

    fn remember(&self, sys: &NormalizedSystem, value: &BigInt) {
        if self.options.memoize {
            self.memo
                .write()
                .entry(key_of(sys))
                .or_insert_with(|| value.clone());
        }
    }

    fn enter(&self, depth: usize) -> Result<()> {
        if depth > self.options.max_depth {
            return Err(Error::DepthExceeded(self.options.max_depth));
        }
        let mut stats = self.stats.lock();
        stats.nodes += 1;
        stats.max_depth = stats.max_depth.max(depth);
        Ok(())
    }

    fn eval(
        &self,
        spec: &LinearSystemSpec,
        depth: usize,
        label: &'static str,
    ) -> Result<(BigInt, TraceNode)> {
        // Walk the +E_1 chain iteratively; only projections recurse, and
        // those lower n.
        struct Link {
            sys: NormalizedSystem,
            label: &'static str,
            projected: BigInt,
            projection: TraceNode,
        }
        let mut chain: Vec<Link> = Vec::new();
        let mut current = spec.clone();
        let mut current_label = label;
        let (mut value, mut node) = loop {
            self.enter(depth + chain.len())?;
            let (resolved, sys) = self.resolve(&current)?;
            match resolved {
                Resolved::Done(v, kind) => {
                    if kind != NodeKind::Memo && kind != NodeKind::Empty {
                        self.remember(&sys, &v);
                    }
                    let node = self.node(current_label, &sys, v.clone(), kind);
                    break (v, node);
                }
                Resolved::Descend(sys) => {
                    let lowered = sys.to_spec().plus_exceptional(0);
                    let projection = l_map(&lowered)?;
                    let (projected, projection_node) =
                        self.eval(&projection.with_q(), depth + chain.len() + 1, "project")?;
                    chain.push(Link {
                        sys,
                        label: current_label,
                        projected,
                        projection: projection_node,
                    });
                    current = lowered;
                    current_label = "+E_1";
                }
            }
        };
        while let Some(link) = chain.pop() {
            value -= &link.projected;
            self.remember(&link.sys, &value);
            let mut parent = self.node(link.label, &link.sys, value.clone(), NodeKind::Step);
            if self.options.trace {
                parent.children = vec![node, link.projection];
            }
            node = parent;
        }
        Ok((value, node))
    }

    fn node(
        &self,
        label: &'static str,
        sys: &NormalizedSystem,
        value: BigInt,
        kind: NodeKind,
    ) -> TraceNode {
        TraceNode {
            label,
            n: sys.n(),
            d: sys.d(),
            mults: sys.mults().to_vec(),
            value,
            kind,
            children: Vec::new(),
        }
    }
}

fn key_of(sys: &NormalizedSystem) -> Key {
    (sys.n(), sys.d(), sys.mults().to_vec())
}

/// `h^0` by the restriction recursion with default options.
pub fn recursive_h0(spec: &LinearSystemSpec) -> Result<BigInt> {
    Recursion::new(RecursionOptions::default()).h0(spec)
}
