//! Karp–Miller forward exploration over ideals and inductive-invariant
//! checking, for any system whose states are ω-markings.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use crate::ideal::{vec_cmp, IdealCover, OmegaMarking, OmegaNat};
use crate::word::{Letter, Word};

/// A transition system lifted to ideals of `control × ℕ^d`.
pub trait OmegaSystem {
    fn alphabet(&self) -> &[Letter];

    /// Ideals whose union is the downward closure of the initial states.
    fn initial_ideals(&self) -> Vec<OmegaMarking>;

    /// Ideals whose union is `↓Post(m, letter)`; need not be an antichain.
    fn successors(&self, m: &OmegaMarking, letter: &str) -> Vec<OmegaMarking>;

    /// Inclusion between ideals. Plain `omega_leq` unless the state order
    /// relates distinct controls.
    fn ideal_leq(&self, a: &OmegaMarking, b: &OmegaMarking) -> bool {
        a.leq_unchecked(b)
    }

    /// Whether the ideal intersects the final states.
    fn meets_final(&self, m: &OmegaMarking) -> bool;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KmNode {
    pub label: OmegaMarking,
    pub parent: Option<usize>,
    pub letter: Option<Letter>,
    /// False when the node was subsumed by an earlier expanded node.
    pub expanded: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KmTree {
    pub nodes: Vec<KmNode>,
}

impl KmTree {
    /// Letters on the path from the root to `node`.
    pub fn path_word(&self, node: usize) -> Word {
        let mut out = Vec::new();
        let mut cur = Some(node);
        while let Some(i) = cur {
            if let Some(l) = &self.nodes[i].letter {
                out.push(l.clone());
            }
            cur = self.nodes[i].parent;
        }
        out.reverse();
        out
    }

    fn ancestors(&self, node: usize) -> impl Iterator<Item = &OmegaMarking> + '_ {
        std::iter::successors(Some(node), move |&i| self.nodes[i].parent)
            .map(move |i| &self.nodes[i].label)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KmResult {
    pub cover: IdealCover,
    pub tree: KmTree,
}

/// Pumps to `ω` every coordinate that strictly grew since some ancestor on
/// the same control, until no ancestor is strictly below the label.
fn accelerate(tree: &KmTree, parent: usize, mut label: OmegaMarking) -> OmegaMarking {
    loop {
        let mut changed = false;
        for anc in tree.ancestors(parent) {
            if anc.control != label.control {
                continue;
            }
            if vec_cmp(&anc.vec, &label.vec) == Some(Ordering::Less) {
                for (a, l) in anc.vec.iter().zip(label.vec.iter_mut()) {
                    if a < l && !l.is_omega() {
                        *l = OmegaNat::Omega;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return label;
        }
    }
}

/// Karp–Miller exploration. Nodes whose label is included in the label of
/// an already expanded node are kept as leaves; the returned cover is the
/// antichain of maximal labels and denotes the downward closure of the
/// reachable states.
pub fn karp_miller<S: OmegaSystem + ?Sized>(sys: &S) -> KmResult {
    let mut tree = KmTree::default();
    let mut queue = VecDeque::new();
    for root in sys.initial_ideals() {
        queue.push_back(tree.nodes.len());
        tree.nodes.push(KmNode {
            label: root,
            parent: None,
            letter: None,
            expanded: false,
        });
    }
    let mut expanded: Vec<usize> = Vec::new();
    while let Some(n) = queue.pop_front() {
        let label = tree.nodes[n].label.clone();
        if expanded
            .iter()
            .any(|&m| sys.ideal_leq(&label, &tree.nodes[m].label))
        {
            continue;
        }
        tree.nodes[n].expanded = true;
        expanded.push(n);
        for a in sys.alphabet() {
            for succ in sys.successors(&label, a) {
                let succ = accelerate(&tree, n, succ);
                queue.push_back(tree.nodes.len());
                tree.nodes.push(KmNode {
                    label: succ,
                    parent: Some(n),
                    letter: Some(a.clone()),
                    expanded: false,
                });
            }
        }
    }
    let cover = IdealCover::normalize_by(
        tree.nodes.iter().map(|n| n.label.clone()),
        |a, b| sys.ideal_leq(a, b),
    );
    KmResult { cover, tree }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// An initial state lies outside the candidate.
    Initial,
    /// The candidate meets the final states.
    Final,
    /// The candidate is not closed under some letter.
    Successor,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::Initial => "iiI",
            ViolationKind::Final => "iiF",
            ViolationKind::Successor => "iiSucc",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantVerdict {
    Ok,
    Violation {
        kind: ViolationKind,
        /// The offending initial ideal, cover element, or successor ideal.
        element: OmegaMarking,
        letter: Option<Letter>,
    },
}

impl InvariantVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, InvariantVerdict::Ok)
    }
}

impl fmt::Display for InvariantVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantVerdict::Ok => f.write_str("ok"),
            InvariantVerdict::Violation {
                kind,
                element,
                letter: Some(a),
            } => write!(f, "violation({kind}) at {element} on {a}"),
            InvariantVerdict::Violation { kind, element, .. } => {
                write!(f, "violation({kind}) at {element}")
            }
        }
    }
}

/// Checks that `↓x` contains the initial states, avoids the final states
/// and is closed under every letter. Reports the first violation found.
pub fn check_invariant<S: OmegaSystem + ?Sized>(sys: &S, x: &IdealCover) -> InvariantVerdict {
    let inside = |m: &OmegaMarking| x.iter().any(|e| sys.ideal_leq(m, e));
    for i in sys.initial_ideals() {
        if !inside(&i) {
            return InvariantVerdict::Violation {
                kind: ViolationKind::Initial,
                element: i,
                letter: None,
            };
        }
    }
    for e in x {
        if sys.meets_final(e) {
            return InvariantVerdict::Violation {
                kind: ViolationKind::Final,
                element: e.clone(),
                letter: None,
            };
        }
    }
    for e in x {
        for a in sys.alphabet() {
            if let Some(s) = sys.successors(e, a).into_iter().find(|s| !inside(s)) {
                return InvariantVerdict::Violation {
                    kind: ViolationKind::Successor,
                    element: s,
                    letter: Some(a.clone()),
                };
            }
        }
    }
    InvariantVerdict::Ok
}
