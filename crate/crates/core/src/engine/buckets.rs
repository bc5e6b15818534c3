use super::VertexClass;

/// One swap-remove set per vertex class, with O(1) insert, delete, move and
/// indexed pick. Every vertex lives in exactly one class.
#[derive(Clone, Debug)]
pub struct Buckets {
    sets: [Vec<u32>; 8],
    class: Vec<VertexClass>,
    pos: Vec<u32>,
}

impl Buckets {
    /// All `n` vertices start in `initial`.
    pub fn new(n: usize, initial: VertexClass) -> Self {
        let mut sets: [Vec<u32>; 8] = Default::default();
        sets[initial.index()] = (0..n as u32).collect();
        Self {
            sets,
            class: vec![initial; n],
            pos: (0..n as u32).collect(),
        }
    }

    #[inline]
    pub fn len(&self, c: VertexClass) -> usize {
        self.sets[c.index()].len()
    }

    #[inline]
    pub fn is_empty(&self, c: VertexClass) -> bool {
        self.sets[c.index()].is_empty()
    }

    #[inline]
    pub fn class_of(&self, v: u32) -> VertexClass {
        self.class[v as usize]
    }

    #[inline]
    pub fn get(&self, c: VertexClass, idx: usize) -> u32 {
        self.sets[c.index()][idx]
    }

    pub fn members(&self, c: VertexClass) -> &[u32] {
        &self.sets[c.index()]
    }

    pub fn vertex_count(&self) -> usize {
        self.class.len()
    }

    pub fn move_to(&mut self, v: u32, to: VertexClass) {
        let from = self.class[v as usize];
        if from == to {
            return;
        }
        let at = self.pos[v as usize] as usize;
        let set = &mut self.sets[from.index()];
        set.swap_remove(at);
        if let Some(&moved) = set.get(at) {
            self.pos[moved as usize] = at as u32;
        }
        let dest = &mut self.sets[to.index()];
        self.pos[v as usize] = dest.len() as u32;
        dest.push(v);
        self.class[v as usize] = to;
    }

    /// Checks that every vertex sits at its recorded position in the set of
    /// its recorded class.
    pub fn check(&self) -> Result<(), String> {
        let total: usize = self.sets.iter().map(Vec::len).sum();
        if total != self.class.len() {
            return Err(format!("bucket sizes sum to {total}, expected {}", self.class.len()));
        }
        for c in VertexClass::ALL {
            for (i, &v) in self.sets[c.index()].iter().enumerate() {
                if self.class[v as usize] != c || self.pos[v as usize] as usize != i {
                    return Err(format!("vertex {v} misplaced in bucket {}", c.name()));
                }
            }
        }
        Ok(())
    }

    #[cfg(test)]
    pub(crate) fn corrupt(&mut self, v: u32, to: VertexClass) {
        // moves v without updating its recorded class
        let from = self.class[v as usize];
        self.move_to(v, to);
        self.class[v as usize] = from;
    }
}
