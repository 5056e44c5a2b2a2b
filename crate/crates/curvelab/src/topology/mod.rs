//! Combinatorial layer: surfaces, curves, multicurves, slopes, pants
//! decompositions and mapping classes.

pub mod mapping_class;
pub mod slope;
pub mod word;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use word::{format_word, parse_word, Word};

/// Topological type (genus, cusps) with negative Euler characteristic.
/// Only (0,3), (1,1), (0,4) and (2,0) are supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSig {
    pub genus: u32,
    pub cusps: u32,
}

impl SurfaceSig {
    pub const CLOSED_GENUS2: SurfaceSig = SurfaceSig { genus: 2, cusps: 0 };

    pub fn new(genus: u32, cusps: u32) -> Result<Self> {
        match (genus, cusps) {
            (0, 3) | (1, 1) | (0, 4) | (2, 0) => Ok(SurfaceSig { genus, cusps }),
            _ => Err(Error::Parse(format!(
                "unsupported surface ({genus},{cusps}); supported: (0,3), (1,1), (0,4), (2,0)"
            ))),
        }
    }

    pub fn euler(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.cusps as i64
    }

    /// Number of curves in a pants decomposition: 3g − 3 + n.
    pub fn decomposition_size(&self) -> usize {
        (3 * self.genus as i64 - 3 + self.cusps as i64).max(0) as usize
    }

    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!("surface `{s}` is not of the form g,n")));
        }
        let g = parts[0]
            .trim()
            .parse::<u32>()
            .map_err(|_| Error::Parse(format!("bad genus `{}` in surface `{s}`", parts[0])))?;
        let n = parts[1]
            .trim()
            .parse::<u32>()
            .map_err(|_| Error::Parse(format!("bad cusp count `{}` in surface `{s}`", parts[1])))?;
        SurfaceSig::new(g, n)
    }
}

impl std::fmt::Display for SurfaceSig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{}", self.genus, self.cusps)
    }
}

/// How component lengths combine into a multicurve length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Aggregator {
    #[default]
    Sum,
    Max,
}

/// A nonempty multiset of curve classes on one surface.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multicurve {
    pub sig: SurfaceSig,
    pub components: Vec<Word>,
    pub aggregator: Aggregator,
}

impl std::hash::Hash for Aggregator {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (*self as u8).hash(state);
    }
}

impl Multicurve {
    pub fn new(sig: SurfaceSig, components: Vec<Word>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Parse("multicurve has no components".into()));
        }
        let components = components
            .iter()
            .map(|w| word::cyclic_reduce(sig, w))
            .collect::<Result<Vec<_>>>()?;
        Ok(Multicurve {
            sig,
            components,
            aggregator: Aggregator::Sum,
        })
    }

    pub fn single(sig: SurfaceSig, w: Word) -> Result<Self> {
        Multicurve::new(sig, vec![w])
    }

    pub fn with_aggregator(mut self, agg: Aggregator) -> Self {
        self.aggregator = agg;
        self
    }

    /// Components whose cyclic word is a proper power (flagged, not rejected).
    pub fn proper_power_components(&self) -> Vec<usize> {
        self.components
            .iter()
            .enumerate()
            .filter(|(_, w)| w.is_proper_power())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn format(&self) -> String {
        self.components
            .iter()
            .map(format_word)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse(sig: SurfaceSig, s: &str) -> Result<Self> {
        let words = s
            .split(',')
            .map(|part| parse_word(sig, part.trim()))
            .collect::<Result<Vec<_>>>()?;
        Multicurve::new(sig, words)
    }
}

/// Trivalent dual multigraph of a pants decomposition: vertices are pants,
/// edges are decomposition curves, cusps count as dangling legs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraph {
    pub vertices: usize,
    /// Edges as unordered vertex pairs (v ≤ w); loops allowed.
    pub edges: Vec<(usize, usize)>,
    /// Dangling cusp legs per vertex.
    pub cusp_legs: Vec<usize>,
}

impl DualGraph {
    fn degree(&self, v: usize) -> usize {
        let mut d = self.cusp_legs[v];
        for &(x, y) in &self.edges {
            if x == v {
                d += 1;
            }
            if y == v {
                d += 1;
            }
        }
        d
    }

    pub fn is_trivalent(&self) -> bool {
        (0..self.vertices).all(|v| self.degree(v) == 3)
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertices];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(x, y) in &self.edges {
                for (from, to) in [(x, y), (y, x)] {
                    if from == v && !seen[to] {
                        seen[to] = true;
                        stack.push(to);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// A pants decomposition: 3g − 3 + n disjoint simple curve classes with
/// their dual graph and a tag into the surface's type table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PantsDecomposition {
    pub sig: SurfaceSig,
    pub curves: Vec<Word>,
    pub dual_graph: DualGraph,
    pub type_tag: String,
}

impl PantsDecomposition {
    pub fn curve_names(&self) -> Vec<String> {
        self.curves.iter().map(format_word).collect()
    }
}

/// Hardcoded pants-type table, one representative per homeomorphism type.
///
/// The table is checked once against the exhaustive trivalent-graph
/// enumeration in [`enumerate_dual_graphs`]; a mismatch is a programming
/// error and panics at first use.
pub fn pants_type_table(sig: SurfaceSig) -> Vec<PantsDecomposition> {
    verify_tables_once();
    pants_type_table_raw(sig)
}

fn pants_type_table_raw(sig: SurfaceSig) -> Vec<PantsDecomposition> {
    let w = |s: &str| parse_word(sig, s).expect("table word");
    match (sig.genus, sig.cusps) {
        // A single pair of pants decomposes trivially: no curves.
        (0, 3) => vec![PantsDecomposition {
            sig,
            curves: vec![],
            dual_graph: DualGraph {
                vertices: 1,
                edges: vec![],
                cusp_legs: vec![3],
            },
            type_tag: "trivial".into(),
        }],
        (1, 1) => vec![PantsDecomposition {
            sig,
            curves: vec![w("a")],
            dual_graph: DualGraph {
                vertices: 1,
                edges: vec![(0, 0)],
                cusp_legs: vec![1],
            },
            type_tag: "standard".into(),
        }],
        (0, 4) => vec![PantsDecomposition {
            sig,
            curves: vec![w("ab")],
            dual_graph: DualGraph {
                vertices: 2,
                edges: vec![(0, 1)],
                cusp_legs: vec![2, 2],
            },
            type_tag: "standard".into(),
        }],
        (2, 0) => vec![
            PantsDecomposition {
                sig,
                curves: vec![w("a"), w("c"), w("ac")],
                dual_graph: DualGraph {
                    vertices: 2,
                    edges: vec![(0, 1), (0, 1), (0, 1)],
                    cusp_legs: vec![0, 0],
                },
                type_tag: "theta".into(),
            },
            PantsDecomposition {
                sig,
                curves: vec![w("abAB"), w("a"), w("c")],
                dual_graph: DualGraph {
                    vertices: 2,
                    edges: vec![(0, 0), (0, 1), (1, 1)],
                    cusp_legs: vec![0, 0],
                },
                type_tag: "dumbbell".into(),
            },
        ],
        _ => unreachable!(),
    }
}

pub fn pants_type_by_tag(sig: SurfaceSig, tag: &str) -> Result<PantsDecomposition> {
    pants_type_table(sig)
        .into_iter()
        .find(|p| p.type_tag == tag)
        .ok_or_else(|| {
            Error::Parse(format!(
                "unknown pants type `{tag}` on ({},{}); known: {}",
                sig.genus,
                sig.cusps,
                pants_type_table(sig)
                    .iter()
                    .map(|p| p.type_tag.clone())
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        })
}

/// Exhaustively enumerate connected trivalent multigraphs with
/// 2g − 2 + n vertices, 3g − 3 + n edges and n cusp legs, up to
/// isomorphism. Supports the one- and two-vertex cases the supported
/// surfaces need.
pub fn enumerate_dual_graphs(sig: SurfaceSig) -> Vec<DualGraph> {
    let v = (2 * sig.genus as i64 - 2 + sig.cusps as i64).max(0) as usize;
    let e = sig.decomposition_size();
    let n = sig.cusps as usize;
    let mut out = Vec::new();
    match v {
        1 => {
            for loops in 0..=e {
                let legs = n;
                if loops == e && 2 * loops + legs == 3 {
                    out.push(DualGraph {
                        vertices: 1,
                        edges: vec![(0, 0); loops],
                        cusp_legs: vec![legs],
                    });
                }
            }
        }
        2 => {
            // l1, l2 loops, m middle edges, legs k1 + k2 = n.
            for l1 in 0..=e {
                for l2 in 0..=e {
                    for m in 0..=e {
                        if l1 + l2 + m != e {
                            continue;
                        }
                        for k1 in 0..=n {
                            let k2 = n - k1;
                            if 2 * l1 + m + k1 != 3 || 2 * l2 + m + k2 != 3 {
                                continue;
                            }
                            // Unordered vertices: keep a canonical labelling.
                            if (l1, k1) > (l2, k2) {
                                continue;
                            }
                            let mut edges = vec![(0usize, 0usize); l1];
                            edges.extend(vec![(1, 1); l2]);
                            edges.extend(vec![(0, 1); m]);
                            edges.sort();
                            let g = DualGraph {
                                vertices: 2,
                                edges,
                                cusp_legs: vec![k1, k2],
                            };
                            if g.is_connected() {
                                out.push(g);
                            }
                        }
                    }
                }
            }
        }
        _ => {}
    }
    out
}

fn verify_tables_once() {
    use std::sync::OnceLock;
    static CHECKED: OnceLock<()> = OnceLock::new();
    CHECKED.get_or_init(|| {
        for (g, n) in [(0u32, 3u32), (1, 1), (0, 4), (2, 0)] {
            let sig = SurfaceSig { genus: g, cusps: n };
            let table = pants_type_table_raw(sig);
            let oracle = enumerate_dual_graphs(sig);
            assert_eq!(
                table.len(),
                oracle.len(),
                "pants type table size mismatch on ({g},{n})"
            );
            for p in &table {
                assert_eq!(p.curves.len(), sig.decomposition_size());
                assert!(p.dual_graph.is_trivalent(), "non-trivalent table entry");
                assert!(p.dual_graph.is_connected());
                let mut sorted_edges = p.dual_graph.edges.clone();
                sorted_edges.sort();
                assert!(
                    oracle.iter().any(|o| {
                        let mut oe = o.edges.clone();
                        oe.sort();
                        let mut tl = p.dual_graph.cusp_legs.clone();
                        let mut ol = o.cusp_legs.clone();
                        tl.sort();
                        ol.sort();
                        oe == sorted_edges && ol == tl
                    }),
                    "table entry absent from oracle on ({g},{n})"
                );
            }
        }
    });
}
