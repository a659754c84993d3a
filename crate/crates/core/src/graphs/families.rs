use super::{Family, Graph};
use crate::error::{Error, Result};

/// Largest hypercube dimension the graph generator will materialize.
pub const MAX_HYPERCUBE_DIM: u32 = 20;

pub fn complete(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::param(format!(
            "complete graph needs n >= 2, got {n}"
        )));
    }
    Ok(Graph::from_adjacency_fn(
        n,
        Family::Complete { n },
        |_, _| true,
    ))
}

/// The `n`-dimensional hypercube on `2^n` vertices. Vertex `x` is the
/// bitmask of its coordinates; neighbours differ in exactly one bit.
pub fn hypercube(n: u32) -> Result<Graph> {
    if n == 0 || n > MAX_HYPERCUBE_DIM {
        return Err(Error::param(format!(
            "hypercube dimension must be in 1..={MAX_HYPERCUBE_DIM}, got {n}"
        )));
    }
    let size = 1usize << n;
    let mut edges = Vec::with_capacity(n as usize * size / 2);
    for u in 0..size {
        for bit in 0..n {
            let v = u ^ (1 << bit);
            if u < v {
                edges.push((u, v));
            }
        }
    }
    edges.sort_unstable();
    Ok(Graph {
        n_vertices: size,
        edges,
        family: Family::Hypercube { n },
    })
}

/// `K_n` with the `l` disjoint edges `{0,1}, {2,3}, …` removed.
pub fn complete_minus_disjoint_edges(n: usize, l: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::param(format!(
            "complete graph needs n >= 2, got {n}"
        )));
    }
    if 2 * l > n {
        return Err(Error::param(format!(
            "cannot delete {l} disjoint edges from K_{n}"
        )));
    }
    if n == 2 && l == 1 {
        return Err(Error::param("deleting the only edge of K_2 disconnects it"));
    }
    Ok(Graph::from_adjacency_fn(
        n,
        Family::CompleteMinus { n, l },
        |u, v| !(v == u + 1 && u % 2 == 0 && u < 2 * l),
    ))
}

/// Paley graph: `u ~ v` iff `u - v` is a non-zero square mod `q`.
pub fn paley(q: usize) -> Result<Graph> {
    if !is_prime(q) || q % 4 != 1 {
        return Err(Error::param(format!(
            "Paley graph needs a prime q = 1 mod 4, got {q}"
        )));
    }
    let mut residue = vec![false; q];
    for x in 1..q {
        residue[x * x % q] = true;
    }
    Ok(Graph::from_adjacency_fn(q, Family::Paley { q }, |u, v| {
        residue[v - u]
    }))
}

/// Complete `m`-partite graph with `m` blocks of `k` vertices each.
pub fn regular_multipartite(m: usize, k: usize) -> Result<Graph> {
    if m < 2 {
        return Err(Error::param(format!(
            "multipartite graph needs m >= 2 blocks, got {m}"
        )));
    }
    if k < 1 {
        return Err(Error::param("multipartite blocks must be non-empty"));
    }
    Ok(Graph::from_adjacency_fn(
        m * k,
        Family::Multipartite { m, k },
        |u, v| u / k != v / k,
    ))
}

fn is_prime(q: usize) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Strongly regular graph parameters `(n, k, a, c)`: `n` vertices of degree
/// `k`, adjacent pairs share `a` neighbours, non-adjacent pairs share `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SrgParams {
    pub n: usize,
    pub k: usize,
    pub a: usize,
    pub c: usize,
}

impl SrgParams {
    /// Checks `k(k - a - 1) = (n - k - 1)c` and excludes the complete and
    /// empty graphs, whose spectra do not have the SRG shape.
    pub fn new(n: usize, k: usize, a: usize, c: usize) -> Result<Self> {
        if k == 0 || k + 1 >= n {
            return Err(Error::param(format!(
                "SRG degree must satisfy 0 < k < n - 1, got ({n},{k},{a},{c})"
            )));
        }
        if a + 1 > k || c > k {
            return Err(Error::param(format!(
                "SRG parameters ({n},{k},{a},{c}) out of range"
            )));
        }
        if k * (k - a - 1) != (n - k - 1) * c {
            return Err(Error::param(format!(
                "SRG parameters ({n},{k},{a},{c}) violate k(k-a-1) = (n-k-1)c"
            )));
        }
        Ok(SrgParams { n, k, a, c })
    }

    /// `Δ = (a - c)^2 + 4(k - c)`.
    pub fn delta(&self) -> f64 {
        let diff = self.a as f64 - self.c as f64;
        diff * diff + 4.0 * (self.k as f64 - self.c as f64)
    }

    /// Reads the parameters off a graph by counting common neighbours over
    /// every pair. `None` if the graph is not strongly regular.
    pub fn of_graph(g: &Graph) -> Option<SrgParams> {
        let adj = g.neighbors();
        let n = g.n_vertices();
        let k = adj.first()?.len();
        if adj.iter().any(|list| list.len() != k) {
            return None;
        }
        let mut member = vec![vec![false; n]; n];
        for (u, list) in adj.iter().enumerate() {
            for &v in list {
                member[u][v] = true;
            }
        }
        let (mut a, mut c) = (None, None);
        for u in 0..n {
            for v in u + 1..n {
                let common = (0..n).filter(|&x| member[u][x] && member[v][x]).count();
                let slot = if member[u][v] { &mut a } else { &mut c };
                match *slot {
                    None => *slot = Some(common),
                    Some(prev) if prev != common => return None,
                    Some(_) => {}
                }
            }
        }
        SrgParams::new(n, k, a.unwrap_or(0), c.unwrap_or(0)).ok()
    }
}
