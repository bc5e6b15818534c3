//! Lazily revealed configuration model on `3n` points.
//!
//! Points are numbered from zero; point `p` belongs to vertex `p / 3`.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

const UNSET: u32 = u32::MAX;

/// A configuration point, `0 <= index < 3n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointId(pub u32);

/// A vertex, `0 <= index < n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl PointId {
    #[inline]
    pub fn vertex(self) -> VertexId {
        VertexId(self.0 / 3)
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    /// The three points of this vertex.
    #[inline]
    pub fn points(self) -> [PointId; 3] {
        let base = self.0 * 3;
        [PointId(base), PointId(base + 1), PointId(base + 2)]
    }
}

/// Whether the pairs revealed so far form a simple graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Simplicity {
    SimpleSoFar,
    LoopSeen,
    MultiEdgeSeen,
}

/// Source of exposures and of the algorithm's own random choices.
///
/// Both draw from one stream so that a single seed reproduces a whole run.
pub trait PairingSource {
    fn vertex_count(&self) -> usize;

    fn is_unpaired(&self, p: PointId) -> bool;

    /// Number of unpaired points, i.e. twice the number of unexposed edges.
    fn unpaired_len(&self) -> usize;

    /// Exposes the partner of the unpaired point `u`.
    ///
    /// Panics if `u` is already paired or no other point is unpaired.
    fn reveal_partner(&mut self, u: PointId) -> PointId;

    /// Exposes every remaining pair.
    fn reveal_all(&mut self) -> Vec<(PointId, PointId)>;

    /// Uniform index in `0..len`. `len == 1` consumes no randomness.
    fn choose(&mut self, len: usize) -> usize;

    /// Number of `reveal_partner` exposures performed so far, including those
    /// made by `reveal_all`.
    fn exposures(&self) -> usize;
}

/// Per-vertex record of already revealed neighbours, used to detect
/// multi-edges in O(1).
#[derive(Clone, Debug)]
struct SimpleTracker {
    neighbours: Vec<[u32; 3]>,
    filled: Vec<u8>,
    loops: usize,
    multi_edges: usize,
    first: Simplicity,
}

impl SimpleTracker {
    fn new(n: usize) -> Self {
        Self {
            neighbours: vec![[UNSET; 3]; n],
            filled: vec![0; n],
            loops: 0,
            multi_edges: 0,
            first: Simplicity::SimpleSoFar,
        }
    }

    fn record(&mut self, a: PointId, b: PointId) {
        let (x, y) = (a.vertex().index(), b.vertex().index());
        if x == y {
            self.loops += 1;
            if self.first == Simplicity::SimpleSoFar {
                self.first = Simplicity::LoopSeen;
            }
            return;
        }
        let seen = self.neighbours[x][..self.filled[x] as usize].contains(&(y as u32));
        if seen {
            self.multi_edges += 1;
            if self.first == Simplicity::SimpleSoFar {
                self.first = Simplicity::MultiEdgeSeen;
            }
        }
        self.neighbours[x][self.filled[x] as usize] = y as u32;
        self.filled[x] += 1;
        self.neighbours[y][self.filled[y] as usize] = x as u32;
        self.filled[y] += 1;
    }
}

fn check_n(n: usize) -> Result<()> {
    if n % 2 == 1 {
        return Err(Error::OddVertexCount(n));
    }
    if n < 2 {
        return Err(Error::TooFewVertices(n));
    }
    if n > (u32::MAX as usize - 3) / 3 {
        return Err(Error::Config(format!("n = {n} exceeds the 32-bit point space")));
    }
    Ok(())
}

/// Uniform index in `0..len` drawn from `rng`.
#[inline]
fn uniform_index<R: RngCore>(rng: &mut R, len: usize) -> usize {
    assert!(len > 0, "cannot choose from an empty range");
    if len == 1 {
        0
    } else {
        rng.random_range(0..len)
    }
}

/// A uniformly random perfect pairing of `3n` points, exposed on demand.
#[derive(Clone, Debug)]
pub struct LazyPairing {
    n: usize,
    unpaired: Vec<u32>,
    // position of each point inside `unpaired`, UNSET once paired
    pos: Vec<u32>,
    partner: Vec<u32>,
    exposures: usize,
    simple: SimpleTracker,
    rng: ChaCha8Rng,
}

impl LazyPairing {
    pub fn new(n: usize, seed: u64) -> Result<Self> {
        check_n(n)?;
        Ok(Self::from_rng(n, ChaCha8Rng::seed_from_u64(seed)))
    }

    fn from_rng(n: usize, rng: ChaCha8Rng) -> Self {
        let points = 3 * n;
        Self {
            n,
            unpaired: (0..points as u32).collect(),
            pos: (0..points as u32).collect(),
            partner: vec![UNSET; points],
            exposures: 0,
            simple: SimpleTracker::new(n),
            rng,
        }
    }

    pub fn point_count(&self) -> usize {
        3 * self.n
    }

    /// Partner of `p` if it has been revealed.
    pub fn partner(&self, p: PointId) -> Option<PointId> {
        match self.partner[p.index()] {
            UNSET => None,
            q => Some(PointId(q)),
        }
    }

    pub fn simplicity_status(&self) -> Simplicity {
        self.simple.first
    }

    pub fn loop_count(&self) -> usize {
        self.simple.loops
    }

    pub fn multi_edge_count(&self) -> usize {
        self.simple.multi_edges
    }

    pub fn rng_mut(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn take(&mut self, p: u32) {
        let at = self.pos[p as usize];
        debug_assert_ne!(at, UNSET);
        self.unpaired.swap_remove(at as usize);
        if let Some(&moved) = self.unpaired.get(at as usize) {
            self.pos[moved as usize] = at;
        }
        self.pos[p as usize] = UNSET;
    }

    /// Consumes the pairing and returns a full pairing drawn from the same
    /// stream, together with the stream for later use.
    fn into_full(mut self) -> (Vec<u32>, SimpleTracker, ChaCha8Rng) {
        self.reveal_all();
        (self.partner, self.simple, self.rng)
    }
}

impl PairingSource for LazyPairing {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn is_unpaired(&self, p: PointId) -> bool {
        self.pos[p.index()] != UNSET
    }

    fn unpaired_len(&self) -> usize {
        self.unpaired.len()
    }

    fn reveal_partner(&mut self, u: PointId) -> PointId {
        assert!(self.is_unpaired(u), "point {} is already paired", u.0);
        assert!(self.unpaired.len() >= 2, "no partner left for point {}", u.0);
        // Uniform over all unpaired points, redrawn on a self-hit: exactly
        // uniform over the others.
        let w = loop {
            let idx = uniform_index(&mut self.rng, self.unpaired.len());
            let w = self.unpaired[idx];
            if w != u.0 {
                break w;
            }
        };
        self.take(u.0);
        self.take(w);
        self.partner[u.index()] = w;
        self.partner[w as usize] = u.0;
        self.exposures += 1;
        self.simple.record(u, PointId(w));
        PointId(w)
    }

    fn reveal_all(&mut self) -> Vec<(PointId, PointId)> {
        let mut pairs = Vec::with_capacity(self.unpaired.len() / 2);
        while let Some(&u) = self.unpaired.last() {
            let w = self.reveal_partner(PointId(u));
            pairs.push((PointId(u), w));
        }
        pairs
    }

    fn choose(&mut self, len: usize) -> usize {
        uniform_index(&mut self.rng, len)
    }

    fn exposures(&self) -> usize {
        self.exposures
    }
}

/// Supplies the algorithm's own choices for a [`FixedPairing`].
pub trait Chooser {
    fn pick(&mut self, len: usize) -> usize;
}

impl Chooser for ChaCha8Rng {
    fn pick(&mut self, len: usize) -> usize {
        uniform_index(self, len)
    }
}

/// Replays a recorded prefix of choices and extends it with zeros, recording
/// the branching factor of every draw. Driving a depth-first odometer over
/// these scripts enumerates every branch of a run.
#[derive(Clone, Debug, Default)]
pub struct ScriptedChooser {
    script: Vec<(usize, usize)>,
    cursor: usize,
}

impl ScriptedChooser {
    pub fn new(prefix: Vec<(usize, usize)>) -> Self {
        Self { script: prefix, cursor: 0 }
    }

    /// `(choice, len)` for every non-trivial draw made so far.
    pub fn script(&self) -> &[(usize, usize)] {
        &self.script
    }

    pub fn into_script(self) -> Vec<(usize, usize)> {
        self.script
    }
}

impl Chooser for ScriptedChooser {
    fn pick(&mut self, len: usize) -> usize {
        assert!(len > 0, "cannot choose from an empty range");
        if len == 1 {
            return 0;
        }
        let choice = match self.script.get(self.cursor) {
            Some(&(choice, recorded)) => {
                assert_eq!(recorded, len, "script diverged from the run it replays");
                choice
            }
            None => {
                self.script.push((0, len));
                0
            }
        };
        self.cursor += 1;
        choice
    }
}

/// A pairing fixed in advance and revealed on demand; the algorithm's own
/// choices come from a separate [`Chooser`].
#[derive(Clone, Debug)]
pub struct FixedPairing<C> {
    n: usize,
    partner: Vec<u32>,
    paired: Vec<bool>,
    unpaired: usize,
    exposures: usize,
    chooser: C,
}

impl<C: Chooser> FixedPairing<C> {
    /// `partner` must be a fixed-point-free involution on `0..3n`.
    pub fn new(partner: Vec<u32>, chooser: C) -> Result<Self> {
        if partner.len() % 3 != 0 {
            return Err(Error::Config("point count is not a multiple of 3".into()));
        }
        let n = partner.len() / 3;
        check_n(n)?;
        for (p, &q) in partner.iter().enumerate() {
            let ok = (q as usize) < partner.len() && q as usize != p && partner[q as usize] as usize == p;
            if !ok {
                return Err(Error::Config(format!("partner map is not an involution at point {p}")));
            }
        }
        Ok(Self {
            n,
            paired: vec![false; partner.len()],
            unpaired: partner.len(),
            partner,
            exposures: 0,
            chooser,
        })
    }

    pub fn chooser(&self) -> &C {
        &self.chooser
    }

    pub fn into_chooser(self) -> C {
        self.chooser
    }

    pub fn partners(&self) -> &[u32] {
        &self.partner
    }
}

impl FixedPairing<ChaCha8Rng> {
    /// Draws full pairings from the seeded stream until one is simple.
    /// Returns the pairing and the number of attempts.
    pub fn simple_from_seed(n: usize, seed: u64) -> Result<(Self, usize)> {
        check_n(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut attempts = 0;
        loop {
            attempts += 1;
            let (partner, simple, back) = LazyPairing::from_rng(n, rng).into_full();
            rng = back;
            if simple.first == Simplicity::SimpleSoFar {
                return Ok((Self::new(partner, rng)?, attempts));
            }
        }
    }
}

impl<C: Chooser> PairingSource for FixedPairing<C> {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn is_unpaired(&self, p: PointId) -> bool {
        !self.paired[p.index()]
    }

    fn unpaired_len(&self) -> usize {
        self.unpaired
    }

    fn reveal_partner(&mut self, u: PointId) -> PointId {
        assert!(self.is_unpaired(u), "point {} is already paired", u.0);
        let w = self.partner[u.index()];
        self.paired[u.index()] = true;
        self.paired[w as usize] = true;
        self.unpaired -= 2;
        self.exposures += 1;
        PointId(w)
    }

    fn reveal_all(&mut self) -> Vec<(PointId, PointId)> {
        let mut pairs = Vec::with_capacity(self.unpaired / 2);
        for p in 0..self.partner.len() as u32 {
            if !self.paired[p as usize] {
                let w = self.reveal_partner(PointId(p));
                pairs.push((PointId(p), w));
            }
        }
        pairs
    }

    fn choose(&mut self, len: usize) -> usize {
        self.chooser.pick(len)
    }

    fn exposures(&self) -> usize {
        self.exposures
    }
}

/// Every perfect pairing of `points` points (as partner maps), in a fixed
/// order. `(points - 1)!!` of them.
pub fn all_pairings(points: usize) -> Vec<Vec<u32>> {
    fn rec(partner: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some(first) = partner.iter().position(|&q| q == UNSET) else {
            out.push(partner.clone());
            return;
        };
        for other in first + 1..partner.len() {
            if partner[other] == UNSET {
                partner[first] = other as u32;
                partner[other] = first as u32;
                rec(partner, out);
                partner[first] = UNSET;
                partner[other] = UNSET;
            }
        }
    }
    assert!(points % 2 == 0, "odd point count has no perfect pairing");
    let mut out = Vec::new();
    rec(&mut vec![UNSET; points], &mut out);
    out
}
