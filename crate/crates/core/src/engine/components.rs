use crate::error::{Error, Result};

/// Component census of a 2-matching viewed as a spanning subgraph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct ComponentCounts {
    /// Total number of components, `paths + cycles + singletons`.
    pub kappa: usize,
    /// Paths with at least one edge.
    pub paths: usize,
    /// Cycles, including 2-cycles formed by parallel edges.
    pub cycles: usize,
    /// Isolated vertices (paths of length 0).
    pub singletons: usize,
}

struct Dsu {
    parent: Vec<u32>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Self { parent: (0..n as u32).collect() }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}

/// Counts the components of `([n], edges)`. `edges` may contain parallel
/// pairs but no loops, and no vertex may have degree above 2.
pub fn count_components(edges: &[(u32, u32)], n: usize) -> Result<ComponentCounts> {
    let mut degree = vec![0u8; n];
    let mut dsu = Dsu::new(n);
    for &(x, y) in edges {
        if x == y {
            return Err(Error::InvalidMatching(format!("loop at vertex {x}")));
        }
        if x as usize >= n || y as usize >= n {
            return Err(Error::InvalidMatching(format!("edge ({x},{y}) outside 0..{n}")));
        }
        for v in [x, y] {
            degree[v as usize] += 1;
            if degree[v as usize] > 2 {
                return Err(Error::InvalidMatching(format!("vertex {v} has degree above 2")));
            }
        }
        dsu.union(x, y);
    }
    // a component is a cycle iff all its vertices have degree 2
    let mut all_two = vec![true; n];
    let mut size = vec![0u32; n];
    for v in 0..n as u32 {
        let r = dsu.find(v) as usize;
        size[r] += 1;
        if degree[v as usize] != 2 {
            all_two[r] = false;
        }
    }
    let mut c = ComponentCounts::default();
    for r in 0..n {
        if size[r] == 0 {
            continue;
        }
        c.kappa += 1;
        if all_two[r] {
            c.cycles += 1;
        } else if size[r] == 1 {
            c.singletons += 1;
        } else {
            c.paths += 1;
        }
    }
    Ok(c)
}
