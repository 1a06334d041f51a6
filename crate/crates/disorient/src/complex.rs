//! Abstract simplicial complexes: simplices, orientations, face and coface
//! incidence, and branching diagnostics.

use std::borrow::Borrow;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::{Mul, Neg};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Orientation parity relative to the sorted vertex order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.as_i32())
    }

    /// Sign of (-1)^k.
    pub fn from_parity(k: usize) -> Self {
        if k.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn flip(self) -> Self {
        -self
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_i8(self.as_i32() as i8)
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match i64::deserialize(deserializer)? {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(D::Error::custom(format!(
                "sign must be 1 or -1, got {other}"
            ))),
        }
    }
}

/// A d-simplex stored as its strictly increasing list of d+1 vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    vertices: Vec<usize>,
}

impl Simplex {
    /// Builds a simplex from vertices in any order; rejects duplicates.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptySimplex);
        }
        vertices.sort_unstable();
        for pair in vertices.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateVertex {
                    vertex: pair[0],
                    context: "simplex vertex list".into(),
                });
            }
        }
        Ok(Simplex { vertices })
    }

    pub fn vertex(v: usize) -> Self {
        Simplex { vertices: vec![v] }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Dimension: one less than the vertex count.
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// True when `other` is a face of `self` (proper or not).
    pub fn contains(&self, other: &Simplex) -> bool {
        other.vertices.iter().all(|v| self.contains_vertex(*v))
    }

    /// The face omitting the vertex at sorted position `j`.
    pub fn face_omitting(&self, j: usize) -> Simplex {
        debug_assert!(self.dim() >= 1 && j <= self.dim());
        let mut vertices = self.vertices.clone();
        vertices.remove(j);
        Simplex { vertices }
    }

    /// Sorted position of vertex `v`, when present.
    pub fn position_of(&self, v: usize) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl Borrow<[usize]> for Simplex {
    fn borrow(&self) -> &[usize] {
        &self.vertices
    }
}

/// A simplex together with an orientation, stored canonically as the sorted
/// vertex tuple and a parity sign. Orderings related by an even permutation
/// name the same orientation; odd permutations name the opposite one. A
/// single vertex admits only the positive orientation in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedSimplex {
    pub simplex: Simplex,
    pub sign: Sign,
}

impl OrientedSimplex {
    pub fn new(simplex: Simplex, sign: Sign) -> Self {
        OrientedSimplex { simplex, sign }
    }

    /// Positively oriented copy of `simplex`, the reference orientation.
    pub fn reference(simplex: Simplex) -> Self {
        OrientedSimplex {
            simplex,
            sign: Sign::Plus,
        }
    }

    /// Canonicalizes an explicit vertex ordering.
    pub fn from_ordering(ordering: &[usize]) -> Result<Self> {
        let sign = permutation_sign(ordering)?;
        let simplex = Simplex::new(ordering.to_vec())?;
        Ok(OrientedSimplex { simplex, sign })
    }

    pub fn dim(&self) -> usize {
        self.simplex.dim()
    }
}

impl Neg for OrientedSimplex {
    type Output = OrientedSimplex;

    fn neg(self) -> OrientedSimplex {
        OrientedSimplex {
            simplex: self.simplex,
            sign: -self.sign,
        }
    }
}

impl fmt::Display for OrientedSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.sign {
            Sign::Plus => "+",
            Sign::Minus => "-",
        };
        write!(f, "{sign}{}", self.simplex)
    }
}

/// Parity of the permutation taking `ordering` to sorted order, as a sign.
/// Rejects repeated entries.
pub fn permutation_sign(ordering: &[usize]) -> Result<Sign> {
    if ordering.is_empty() {
        return Err(Error::EmptySimplex);
    }
    let mut inversions = 0usize;
    for i in 0..ordering.len() {
        for j in i + 1..ordering.len() {
            match ordering[i].cmp(&ordering[j]) {
                std::cmp::Ordering::Greater => inversions += 1,
                std::cmp::Ordering::Equal => {
                    return Err(Error::DuplicateVertex {
                        vertex: ordering[i],
                        context: "vertex ordering".into(),
                    })
                }
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Ok(Sign::from_parity(inversions))
}

/// All codimension-one faces, ordered by the omitted sorted position: the
/// face dropping the smallest vertex comes first.
pub fn faces(simplex: &Simplex) -> Result<Vec<Simplex>> {
    if simplex.dim() == 0 {
        return Err(Error::VertexHasNoFaces);
    }
    Ok((0..=simplex.dim())
        .map(|j| simplex.face_omitting(j))
        .collect())
}

/// Orientation induced on a codimension-one face: dropping the vertex at
/// sorted position j multiplies the parent sign by (-1)^j, matching the
/// alternating signs of the boundary operator.
pub fn induced_orientation(parent: &OrientedSimplex, face: &Simplex) -> Result<OrientedSimplex> {
    if face.dim() + 1 != parent.dim() || !parent.simplex.contains(face) {
        return Err(Error::NotAFace {
            face: face.to_string(),
            simplex: parent.simplex.to_string(),
        });
    }
    let omitted = parent
        .simplex
        .vertices()
        .iter()
        .find(|v| !face.contains_vertex(**v))
        .copied()
        .expect("codimension-one face omits exactly one vertex");
    let j = parent
        .simplex
        .position_of(omitted)
        .expect("omitted vertex is in the parent");
    Ok(OrientedSimplex::new(
        face.clone(),
        parent.sign * Sign::from_parity(j),
    ))
}

/// Degree entry for one codimension-one face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingEntry {
    pub face: Simplex,
    pub degree: usize,
    pub is_branching: bool,
}

/// Degrees of every codimension-one simplex; a face is branching when more
/// than two top simplices share it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BranchingReport {
    pub entries: Vec<BranchingEntry>,
}

impl BranchingReport {
    pub fn branching_faces(&self) -> impl Iterator<Item = &BranchingEntry> {
        self.entries.iter().filter(|e| e.is_branching)
    }

    pub fn branching_count(&self) -> usize {
        self.branching_faces().count()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Level {
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    /// Indices into the level above, ascending.
    cofaces: Vec<Vec<usize>>,
    /// Indices into the level below, in omitted-position order.
    faces: Vec<Vec<usize>>,
}

/// A finite simplicial complex, closed under taking faces.
///
/// Simplices of each dimension are stored sorted lexicographically, and the
/// position in that order is the canonical index used by dual graphs,
/// boundary matrices, and certificates. Because the representation is
/// canonical, derived equality coincides with equality of simplex sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    levels: Vec<Level>,
}

impl SimplicialComplex {
    /// Builds the downward closure of the given simplices. Inputs may repeat,
    /// arrive in any vertex order, mix dimensions, or be faces of one
    /// another; the closure deduplicates them.
    pub fn build(maximal: &[Vec<usize>]) -> Result<Self> {
        if maximal.is_empty() {
            return Err(Error::EmptyComplex);
        }
        let mut top_dim = 0;
        let mut inputs = Vec::with_capacity(maximal.len());
        for vertices in maximal {
            let s = Simplex::new(vertices.clone())?;
            top_dim = top_dim.max(s.dim());
            inputs.push(s);
        }

        let mut sets: Vec<BTreeSet<Simplex>> = vec![BTreeSet::new(); top_dim + 1];
        for s in inputs {
            let d = s.dim();
            sets[d].insert(s);
        }
        for d in (1..=top_dim).rev() {
            let parents: Vec<Simplex> = sets[d].iter().cloned().collect();
            for parent in parents {
                for j in 0..=d {
                    sets[d - 1].insert(parent.face_omitting(j));
                }
            }
        }

        let mut levels: Vec<Level> = sets
            .into_iter()
            .map(|set| {
                let simplices: Vec<Simplex> = set.into_iter().collect();
                let index = simplices
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect();
                let n = simplices.len();
                Level {
                    simplices,
                    index,
                    cofaces: vec![Vec::new(); n],
                    faces: vec![Vec::new(); n],
                }
            })
            .collect();

        for d in 1..=top_dim {
            let (below, at) = levels.split_at_mut(d);
            let below = &mut below[d - 1];
            let at = &mut at[0];
            for (i, s) in at.simplices.iter().enumerate() {
                for j in 0..=d {
                    let face = s.face_omitting(j);
                    let fi = *below.index.get(&face).expect("closure contains every face");
                    at.faces[i].push(fi);
                    below.cofaces[fi].push(i);
                }
            }
        }

        Ok(SimplicialComplex { levels })
    }

    /// Top dimension N.
    pub fn dimension(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn num_simplices(&self, d: usize) -> usize {
        self.levels.get(d).map_or(0, |l| l.simplices.len())
    }

    /// All d-simplices in canonical (lexicographic) order.
    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.levels.get(d).map_or(&[], |l| &l.simplices)
    }

    pub fn simplex(&self, d: usize, index: usize) -> &Simplex {
        &self.levels[d].simplices[index]
    }

    /// Canonical index of a simplex within its dimension.
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.levels.get(s.dim())?.index.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    /// Indices of the codimension-one faces of the d-simplex at `index`,
    /// in omitted-position order.
    pub fn face_indices(&self, d: usize, index: usize) -> &[usize] {
        &self.levels[d].faces[index]
    }

    /// Indices of the cofaces one dimension up, ascending.
    pub fn coface_indices(&self, d: usize, index: usize) -> &[usize] {
        &self.levels[d].cofaces[index]
    }

    /// Cofaces of a simplex: all simplices one dimension up containing it.
    pub fn cofaces(&self, s: &Simplex) -> Result<Vec<Simplex>> {
        let i = self.index_of(s).ok_or_else(|| Error::NotInComplex {
            simplex: s.to_string(),
        })?;
        let d = s.dim();
        Ok(self.levels[d].cofaces[i]
            .iter()
            .map(|&ci| self.levels[d + 1].simplices[ci].clone())
            .collect())
    }

    /// Number of cofaces of a simplex.
    pub fn degree(&self, s: &Simplex) -> Result<usize> {
        let i = self.index_of(s).ok_or_else(|| Error::NotInComplex {
            simplex: s.to_string(),
        })?;
        Ok(self.levels[s.dim()].cofaces[i].len())
    }

    /// Distinct vertex ids, ascending.
    pub fn vertex_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.levels[0].simplices.iter().map(|s| s.vertices()[0])
    }

    pub fn vertex_count(&self) -> usize {
        self.levels[0].simplices.len()
    }

    pub fn max_vertex_id(&self) -> usize {
        self.levels[0]
            .simplices
            .last()
            .map(|s| s.vertices()[0])
            .expect("a complex has at least one vertex")
    }

    /// Degrees of all codimension-one simplices; branching means degree > 2.
    pub fn branching_report(&self) -> BranchingReport {
        let n = self.dimension();
        if n == 0 {
            return BranchingReport::default();
        }
        let entries = self.levels[n - 1]
            .simplices
            .iter()
            .zip(&self.levels[n - 1].cofaces)
            .map(|(face, cof)| BranchingEntry {
                face: face.clone(),
                degree: cof.len(),
                is_branching: cof.len() > 2,
            })
            .collect();
        BranchingReport { entries }
    }

    /// Simplices with no coface, ascending dimension then lexicographic.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for level in &self.levels {
            for (s, cof) in level.simplices.iter().zip(&level.cofaces) {
                if cof.is_empty() {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// Maximal simplices of dimension below the top. The disorientability
    /// engine ignores these; they are surfaced as diagnostics.
    pub fn stray_maximal_simplices(&self) -> Vec<Simplex> {
        let n = self.dimension();
        self.maximal_simplices()
            .into_iter()
            .filter(|s| s.dim() < n)
            .collect()
    }

    /// Connected components of the 1-skeleton (isolated vertices count).
    pub fn connected_components(&self) -> usize {
        let n0 = self.vertex_count();
        let mut seen = vec![false; n0];
        let mut components = 0;
        for start in 0..n0 {
            if seen[start] {
                continue;
            }
            components += 1;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &e in &self.levels[0].cofaces[v] {
                    for &w in &self.levels[1].faces[e] {
                        if !seen[w] {
                            seen[w] = true;
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        components
    }

    /// Internal consistency: closure, sorted levels, and mutual face/coface
    /// indexing. Intended for tests and debugging.
    pub fn validate(&self) -> Result<()> {
        for (d, level) in self.levels.iter().enumerate() {
            if level.simplices.is_empty() {
                return Err(Error::DimensionOutOfRange {
                    d,
                    n: self.dimension(),
                });
            }
            for (i, s) in level.simplices.iter().enumerate() {
                if s.dim() != d || level.index.get(s) != Some(&i) {
                    return Err(Error::NotInComplex {
                        simplex: s.to_string(),
                    });
                }
                if i > 0 && level.simplices[i - 1] >= *s {
                    return Err(Error::NotInComplex {
                        simplex: s.to_string(),
                    });
                }
                if d > 0 {
                    for (j, &fi) in level.faces[i].iter().enumerate() {
                        let face = s.face_omitting(j);
                        if self.levels[d - 1].simplices[fi] != face {
                            return Err(Error::NotAFace {
                                face: face.to_string(),
                                simplex: s.to_string(),
                            });
                        }
                        if !self.levels[d - 1].cofaces[fi].contains(&i) {
                            return Err(Error::NotInComplex {
                                simplex: face.to_string(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
