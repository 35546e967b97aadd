//! Seeded instance generators.

use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{
    csp::{binary_instance, Assignment, Constraint, CspInstance, Sym, TupleSet},
    graph::Graph,
    Error, Result,
};

/// `G(n, p)`: each pair `u < v` independently with probability `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadParams(format!("p = {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

pub fn clique(n: usize) -> Graph {
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::new(n, edges).expect("clique edges are valid")
}

/// Star on `n` vertices: center 0 and `n − 1` leaves.
pub fn star(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::BadParams("star needs at least one vertex".into()));
    }
    Graph::new(n, (1..n).map(|l| (0, l)).collect())
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges = (0..a)
        .flat_map(|u| (a..a + b).map(move |v| (u, v)))
        .collect();
    Graph::new(a + b, edges).expect("bipartite edges are valid")
}

/// Even cycle `C_n`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::BadParams("cycle needs n ≥ 3".into()));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

/// A random 2-CSP on `n` variables and `m` constraints with two planted
/// satisfying assignments. Each constraint allows both planted pairs and
/// every other pair with probability `density`.
pub fn planted_csp(
    n: usize,
    m: usize,
    q: usize,
    density: f64,
    seed: u64,
) -> Result<(CspInstance, Assignment, Assignment)> {
    if n < 2 || q == 0 {
        return Err(Error::BadParams("planted CSP needs n ≥ 2 and q ≥ 1".into()));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::BadParams(format!(
            "density = {density} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s: Vec<Sym> = (0..n).map(|_| rng.gen_range(0..q as Sym)).collect();
    let t: Vec<Sym> = (0..n).map(|_| rng.gen_range(0..q as Sym)).collect();
    let mut constraints = Vec::with_capacity(m);
    for _ in 0..m {
        let u = rng.gen_range(0..n);
        let mut v = rng.gen_range(0..n - 1);
        if v >= u {
            v += 1;
        }
        let mut rows = vec![vec![s[u], s[v]], vec![t[u], t[v]]];
        for a in 0..q as Sym {
            for b in 0..q as Sym {
                if rng.gen_bool(density) {
                    rows.push(vec![a, b]);
                }
            }
        }
        constraints.push(Constraint::new(vec![u, v], TupleSet::new(2, rows)));
    }
    let variables = (0..n).map(|v| format!("x{v}")).collect();
    let alphabet = (0..q).map(|a| a.to_string()).collect();
    let inst = CspInstance::new(variables, alphabet, 2, constraints, None)?;
    Ok((inst, Assignment::new(s), Assignment::new(t)))
}

/// Proper `q`-coloring constraints (`≠`) on the edges of `g`.
pub fn coloring(g: &Graph, q: usize) -> Result<CspInstance> {
    binary_instance(g.num_vertices(), q, g.edges(), |_, a, b| a != b)
}

/// Two-coloring of a random bipartite graph with parts of sizes `⌈n/2⌉`,
/// `⌊n/2⌋` and edge probability `p`. The endpoints are the two proper
/// colorings that respect the parts, in a shuffled vertex labelling.
pub fn planted_coloring(
    n: usize,
    p: f64,
    seed: u64,
) -> Result<(CspInstance, Assignment, Assignment)> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadParams(format!("p = {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(&mut rng);
    let half = n.div_ceil(2);
    let mut side = vec![0 as Sym; n];
    for &v in &labels[half..] {
        side[v] = 1;
    }
    let mut edges = Vec::new();
    for &u in &labels[..half] {
        for &v in &labels[half..] {
            if rng.gen_bool(p) {
                edges.push((u.min(v), u.max(v)));
            }
        }
    }
    edges.sort_unstable();
    let inst = coloring(&Graph::new(n, edges)?, 2)?;
    let flipped = side.iter().map(|&c| 1 - c).collect();
    Ok((inst, Assignment::new(side), Assignment::new(flipped)))
}

/// Proper 2-colorings of the even cycle `C_n`.
pub fn cycle_coloring(n: usize) -> Result<(CspInstance, Assignment, Assignment)> {
    if n % 2 == 1 {
        return Err(Error::BadParams("odd cycles are not 2-colorable".into()));
    }
    let inst = coloring(&cycle(n)?, 2)?;
    let s: Vec<Sym> = (0..n as Sym).map(|i| i % 2).collect();
    let t = s.iter().map(|&c| 1 - c).collect();
    Ok((inst, Assignment::new(s), Assignment::new(t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Value;

    #[test]
    fn family_sizes() {
        let s = star(5).unwrap();
        assert_eq!(s.num_edges(), 4);
        assert_eq!(s.degree(0), 4);
        assert_eq!(clique(5).num_edges(), 10);
        assert_eq!(complete_bipartite(2, 3).num_edges(), 6);
        assert!(star(0).is_err());
        assert!(gnp(5, 1.5, 0).is_err());
        assert_eq!(gnp(6, 1.0, 0).unwrap().num_edges(), 15);
    }

    #[test]
    fn gnp_is_seeded() {
        assert_eq!(gnp(30, 0.3, 9).unwrap(), gnp(30, 0.3, 9).unwrap());
        assert_ne!(gnp(30, 0.3, 9).unwrap(), gnp(30, 0.3, 10).unwrap());
    }

    #[test]
    fn planted_endpoints_satisfy() {
        let one = Value::from_integer(1);
        let (inst, s, t) = cycle_coloring(8).unwrap();
        assert_eq!(inst.value(&s).unwrap(), one);
        assert_eq!(inst.value(&t).unwrap(), one);
        let (inst, s, t) = planted_csp(20, 60, 3, 0.3, 4).unwrap();
        assert_eq!(inst.value(&s).unwrap(), one);
        assert_eq!(inst.value(&t).unwrap(), one);
        let (inst, s, t) = planted_coloring(30, 0.2, 4).unwrap();
        assert_eq!(inst.value(&s).unwrap(), one);
        assert_eq!(inst.value(&t).unwrap(), one);
        assert!(cycle_coloring(7).is_err());
    }
}
