//! Seeded instance families for tests and benchmarks.
//!
//! Every generator checks its output against the requested shape before
//! returning it. Vertex labels are shuffled so that no family hands the
//! algorithms a conveniently ordered instance.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{SimpleGraph, VertexId};
use crate::overfull::{detect, DeficiencyView, OverfullStatus};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Regular,
    TwoLight,
    WideSpread,
    RandomDense,
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "regular" => Ok(Family::Regular),
            "two-light" => Ok(Family::TwoLight),
            "wide-spread" => Ok(Family::WideSpread),
            "random-dense" => Ok(Family::RandomDense),
            _ => Err(format!("unknown family `{s}`")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenerateError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("no instance found after {0} attempts")]
    Exhausted(usize),
    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Relabels `g` by a uniformly random permutation.
fn shuffle(g: &SimpleGraph, rng: &mut ChaCha8Rng) -> SimpleGraph {
    let mut perm: Vec<VertexId> = (0..g.universe()).collect();
    perm.shuffle(rng);
    let mut out = SimpleGraph::new(g.universe());
    for (u, v) in g.edges() {
        out.add_edge(perm[u], perm[v]);
    }
    out
}

/// Degree-preserving double-edge switches: `ab, cd → ac, bd`. Edges for
/// which `keep` holds are never removed.
fn switch_edges(g: &mut SimpleGraph, rounds: usize, rng: &mut ChaCha8Rng, keep: impl Fn(VertexId, VertexId) -> bool) {
    let mut edges: Vec<(VertexId, VertexId)> = g.edges().collect();
    if edges.len() < 2 {
        return;
    }
    for _ in 0..rounds {
        let i = rng.gen_range(0..edges.len());
        let j = rng.gen_range(0..edges.len());
        let (a, b) = edges[i];
        let (mut c, mut d) = edges[j];
        if rng.gen_bool(0.5) {
            std::mem::swap(&mut c, &mut d);
        }
        if i == j || a == c || a == d || b == c || b == d || keep(a, b) || keep(c, d) {
            continue;
        }
        if g.has_edge(a, c) || g.has_edge(b, d) {
            continue;
        }
        g.remove_edge(a, b);
        g.remove_edge(c, d);
        g.add_edge(a, c);
        g.add_edge(b, d);
        edges[i] = (a.min(c), a.max(c));
        edges[j] = (b.min(d), b.max(d));
    }
}

/// `r`-regular circulant on `order` vertices (`order · r` even).
fn circulant(order: usize, r: usize) -> SimpleGraph {
    let mut g = SimpleGraph::new(order);
    for v in 0..order {
        for d in 1..=r / 2 {
            g.add_edge(v, (v + d) % order);
        }
        if r % 2 == 1 {
            g.add_edge(v, (v + order / 2) % order);
        }
    }
    g
}

/// Simple graph with the given degrees by Havel–Hakimi, or `None`.
fn havel_hakimi(order: usize, demand: &[(VertexId, usize)]) -> Option<SimpleGraph> {
    let mut g = SimpleGraph::new(order);
    let mut rest: Vec<(usize, VertexId)> = demand.iter().map(|&(v, d)| (d, v)).filter(|&(d, _)| d > 0).collect();
    loop {
        rest.sort_by(|a, b| b.cmp(a));
        rest.retain(|&(d, _)| d > 0);
        let Some(&(d, v)) = rest.first() else { return Some(g) };
        if d > rest.len() - 1 {
            return None;
        }
        for slot in rest.iter_mut().skip(1).take(d) {
            g.add_edge(v, slot.1);
            slot.0 -= 1;
        }
        rest[0].0 = 0;
    }
}

fn check_shape(g: &SimpleGraph, max_degree: usize, min_degree: usize) -> Result<(), GenerateError> {
    if g.max_degree() != max_degree || g.min_degree() != min_degree {
        return Err(GenerateError::SelfCheck(format!(
            "degrees span [{}, {}], expected [{min_degree}, {max_degree}]",
            g.min_degree(),
            g.max_degree()
        )));
    }
    Ok(())
}

fn check_order(order: usize) -> Result<(), GenerateError> {
    if order < 4 || order % 2 == 1 {
        return Err(GenerateError::Infeasible(format!("order {order} must be even and at least 4")));
    }
    Ok(())
}

/// A random `degree`-regular graph: a circulant on the sparser of the graph
/// and its complement, randomized by edge switches.
pub fn regular(order: usize, degree: usize, seed: u64) -> Result<SimpleGraph, GenerateError> {
    check_order(order)?;
    if degree >= order {
        return Err(GenerateError::Infeasible(format!("degree {degree} needs more than {order} vertices")));
    }
    let mut rng = rng(seed);
    let sparse = degree.min(order - 1 - degree);
    let mut h = circulant(order, sparse);
    let rounds = 10 * h.edge_count() + 100;
    switch_edges(&mut h, rounds, &mut rng, |_, _| false);
    let g = if sparse == degree { h } else { h.complement() };
    let g = shuffle(&g, &mut rng);
    check_shape(&g, degree, degree)?;
    Ok(g)
}

/// Every vertex at `degree` except two at `degree − deficiency`.
///
/// Starts from a random regular graph and, `deficiency` times, trades
/// edges `x a`, `y b` for `a b`.
pub fn two_light(order: usize, degree: usize, deficiency: usize, seed: u64) -> Result<SimpleGraph, GenerateError> {
    check_order(order)?;
    if deficiency == 0 || deficiency > degree {
        return Err(GenerateError::Infeasible(format!("deficiency {deficiency} must lie in [1, {degree}]")));
    }
    let mut rng = rng(seed);
    for attempt in 0..64 {
        let mut g = regular(order, degree, seed.wrapping_add(attempt))?;
        let (x, y) = (0, 1);
        let mut ok = true;
        for _ in 0..deficiency {
            let mut xs: Vec<VertexId> = g.neighbors(x).filter(|&a| a != y && g.degree(a) == degree).collect();
            let mut ys: Vec<VertexId> = g.neighbors(y).filter(|&b| b != x && g.degree(b) == degree).collect();
            xs.shuffle(&mut rng);
            ys.shuffle(&mut rng);
            let pick = xs.iter().find_map(|&a| ys.iter().find(|&&b| b != a && !g.has_edge(a, b)).map(|&b| (a, b)));
            let Some((a, b)) = pick else {
                ok = false;
                break;
            };
            g.remove_edge(x, a);
            g.remove_edge(y, b);
            g.add_edge(a, b);
        }
        if ok {
            let g = shuffle(&g, &mut rng);
            check_shape(&g, degree, degree - deficiency)?;
            let view = DeficiencyView::of(&g);
            if view.v_min.len() != 2 {
                return Err(GenerateError::SelfCheck(format!("{} light vertices", view.v_min.len())));
            }
            return Ok(g);
        }
    }
    Err(GenerateError::Exhausted(64))
}

/// `light` pairwise adjacent vertices of degree `min_degree`, every other
/// vertex at `max_degree`. With `light ≥ 3` there is no overfull or full
/// subgraph; `light < order / 2` keeps more than half the vertices at `Δ`.
pub fn wide_spread(order: usize, max_degree: usize, min_degree: usize, light: usize, seed: u64) -> Result<SimpleGraph, GenerateError> {
    check_order(order)?;
    let heavy = order - light;
    if light < 3 || 2 * light >= order {
        return Err(GenerateError::Infeasible(format!("light count {light} must lie in [3, {})", order / 2)));
    }
    if min_degree >= max_degree || max_degree >= order {
        return Err(GenerateError::Infeasible(format!("need min degree {min_degree} < max degree {max_degree} < {order}")));
    }
    if min_degree < light - 1 {
        return Err(GenerateError::Infeasible("light vertices cannot form a clique".into()));
    }
    if (light * min_degree + heavy * max_degree) % 2 == 1 {
        return Err(GenerateError::Infeasible("degree sum is odd".into()));
    }
    // In the complement, light vertices are independent and need `r_light`
    // edges into the heavy side, where each vertex has room `r_heavy`.
    let r_light = order - 1 - min_degree;
    let r_heavy = order - 1 - max_degree;
    if light * r_light > heavy * r_heavy {
        return Err(GenerateError::Infeasible("heavy vertices cannot absorb the light deficiency".into()));
    }
    let mut rng = rng(seed);
    for _ in 0..64 {
        let mut comp = SimpleGraph::new(order);
        let mut room: Vec<usize> = vec![r_heavy; order];
        for v in 0..light {
            let mut hs: Vec<VertexId> = (light..order).collect();
            hs.shuffle(&mut rng);
            hs.sort_by_key(|&h| std::cmp::Reverse(room[h]));
            for &h in hs.iter().take(r_light) {
                comp.add_edge(v, h);
                room[h] -= 1;
            }
        }
        let demand: Vec<(VertexId, usize)> = (light..order).map(|h| (h, room[h])).collect();
        let Some(rest) = havel_hakimi(order, &demand) else { continue };
        for (u, v) in rest.edges() {
            comp.add_edge(u, v);
        }
        let mut g = comp.complement();
        let rounds = 10 * g.edge_count();
        switch_edges(&mut g, rounds, &mut rng, |a, b| a < light && b < light);
        let g = shuffle(&g, &mut rng);
        check_shape(&g, max_degree, min_degree)?;
        let view = DeficiencyView::of(&g);
        if view.v_min.len() != light || view.v_max.len() != heavy {
            return Err(GenerateError::SelfCheck(format!("|V_δ| = {}, |V_Δ| = {}", view.v_min.len(), view.v_max.len())));
        }
        let clique = view.v_min.iter().all(|&u| view.v_min.iter().all(|&v| u == v || g.has_edge(u, v)));
        if !clique {
            return Err(GenerateError::SelfCheck("light vertices are not pairwise adjacent".into()));
        }
        return Ok(g);
    }
    Err(GenerateError::Exhausted(64))
}

/// `G(order, p)` conditioned on minimum degree above `order / 2`.
pub fn random_dense(order: usize, p: f64, seed: u64) -> Result<SimpleGraph, GenerateError> {
    check_order(order)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(GenerateError::Infeasible(format!("edge probability {p} is not in [0, 1]")));
    }
    let mut rng = rng(seed);
    const TRIES: usize = 10_000;
    for _ in 0..TRIES {
        let mut g = SimpleGraph::new(order);
        for u in 0..order {
            for v in u + 1..order {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        if 2 * g.min_degree() > order {
            return Ok(g);
        }
    }
    Err(GenerateError::Exhausted(TRIES))
}

/// A dense graph with an overfull subgraph `G − v`: `v` joined to an even
/// set `N` of `d` vertices, a perfect matching of `N` deleted from the
/// clique on `V − v`, and a few further edges deleted outside `N`.
pub fn planted_overfull(order: usize, seed: u64) -> Result<SimpleGraph, GenerateError> {
    check_order(order)?;
    let n = order / 2;
    let mut rng = rng(seed);
    let lo = if (n + 1) % 2 == 0 { n + 1 } else { n + 2 };
    if lo + 2 >= order {
        return Err(GenerateError::Infeasible(format!("order {order} is too small for a planted overfull subgraph")));
    }
    let d = {
        let choices: Vec<usize> = (lo..order - 2).step_by(2).collect();
        *choices.choose(&mut rng).unwrap()
    };
    let mut g = SimpleGraph::complete(order);
    let mut others: Vec<VertexId> = (1..order).collect();
    others.shuffle(&mut rng);
    let (near, far) = others.split_at(d);
    for &u in far {
        g.remove_edge(0, u);
    }
    for pair in near.chunks(2) {
        g.remove_edge(pair[0], pair[1]);
    }
    // Each deleted edge outside N raises df(G − v) by two; keep it below Δ.
    let slack = order - 2 - d;
    let extra = rng.gen_range(0..=(slack - 1) / 2);
    let mut far = far.to_vec();
    far.shuffle(&mut rng);
    for pair in far.chunks(2).take(extra) {
        if pair.len() == 2 {
            g.remove_edge(pair[0], pair[1]);
        }
    }
    let g = shuffle(&g, &mut rng);
    match detect(&g) {
        Ok(v) if v.status == OverfullStatus::OverfullFound => Ok(g),
        Ok(v) => Err(GenerateError::SelfCheck(format!("planted instance reads as {:?}", v.status))),
        Err(e) => Err(GenerateError::SelfCheck(e.to_string())),
    }
}
