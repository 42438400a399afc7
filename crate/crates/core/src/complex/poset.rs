use serde::Serialize;
use thiserror::Error;

/// Face ranks the algorithm reads: vertices and the top three dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rank {
    Vertex,
    /// Dimension n - 3 (the faces whose stars are checked).
    Sub,
    /// Dimension n - 2.
    Ridge,
    /// Dimension n - 1.
    Facet,
}

impl Rank {
    pub fn dimension(self, ambient_dim: usize) -> usize {
        match self {
            Rank::Vertex => 0,
            Rank::Sub => ambient_dim - 3,
            Rank::Ridge => ambient_dim - 2,
            Rank::Facet => ambient_dim - 1,
        }
    }

    fn level(self) -> usize {
        match self {
            Rank::Vertex | Rank::Sub => 0,
            Rank::Ridge => 1,
            Rank::Facet => 2,
        }
    }
}

/// A face: its index within its rank and its dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FaceId {
    pub dim: usize,
    pub index: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("ambient dimension {0} is below 3")]
    Dimension(usize),
    #[error("{rank:?} face {face} references unknown {target} {missing}")]
    MissingLink { rank: Rank, face: usize, target: &'static str, missing: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Level {
    vertices: Vec<Vec<u32>>,
    contains: Vec<Vec<u32>>,
    up: Vec<Vec<u32>>,
}

/// Incidence structure of the faces of dimensions 0, n-3, n-2 and n-1.
///
/// For `n = 3` the (n-3)-faces are the vertices themselves. Upward links are
/// derived at construction; the poset is immutable afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePoset {
    ambient_dim: usize,
    num_vertices: usize,
    levels: [Level; 3],
}

/// Raw face description: vertex list and the ids of contained faces one
/// rank lower.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FaceSpec {
    pub vertices: Vec<u32>,
    pub contains: Vec<u32>,
}

impl FacePoset {
    /// `subs` is ignored (derived from the vertices) when `ambient_dim == 3`.
    pub fn new(
        ambient_dim: usize,
        num_vertices: usize,
        subs: Vec<FaceSpec>,
        ridges: Vec<FaceSpec>,
        facets: Vec<FaceSpec>,
    ) -> Result<Self, PosetError> {
        if ambient_dim < 3 {
            return Err(PosetError::Dimension(ambient_dim));
        }
        let subs = if ambient_dim == 3 {
            (0..num_vertices as u32).map(|v| FaceSpec { vertices: vec![v], contains: vec![] }).collect()
        } else {
            subs
        };
        let specs = [subs, ridges, facets];
        let ranks = [Rank::Sub, Rank::Ridge, Rank::Facet];
        let mut levels: [Level; 3] = Default::default();
        for (li, faces) in specs.into_iter().enumerate() {
            let level = &mut levels[li];
            for (fi, face) in faces.into_iter().enumerate() {
                if let Some(&v) = face.vertices.iter().find(|&&v| v as usize >= num_vertices) {
                    return Err(PosetError::MissingLink { rank: ranks[li], face: fi, target: "vertex", missing: v as usize });
                }
                level.vertices.push(face.vertices);
                level.contains.push(if li == 0 { Vec::new() } else { face.contains });
            }
        }
        for li in 1..3 {
            let below = levels[li - 1].vertices.len();
            let mut up = vec![Vec::new(); below];
            for (fi, contains) in levels[li].contains.iter().enumerate() {
                for &c in contains {
                    let Some(slot) = up.get_mut(c as usize) else {
                        return Err(PosetError::MissingLink {
                            rank: ranks[li],
                            face: fi,
                            target: if li == 1 { "sub-face" } else { "ridge" },
                            missing: c as usize,
                        });
                    };
                    slot.push(fi as u32);
                }
            }
            levels[li - 1].up = up;
        }
        levels[2].up = vec![Vec::new(); levels[2].vertices.len()];
        Ok(FacePoset { ambient_dim, num_vertices, levels })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn count(&self, rank: Rank) -> usize {
        match rank {
            Rank::Vertex => self.num_vertices,
            r => self.levels[r.level()].vertices.len(),
        }
    }

    pub fn face_id(&self, rank: Rank, index: usize) -> FaceId {
        FaceId { dim: rank.dimension(self.ambient_dim), index }
    }

    /// Vertices of a face (for `Rank::Vertex`, the vertex itself).
    pub fn vertices(&self, rank: Rank, index: usize) -> &[u32] {
        match rank {
            Rank::Vertex => &self.levels[0].vertices[index][..1],
            r => &self.levels[r.level()].vertices[index],
        }
    }

    /// Faces one rank lower contained in this face (ridge → subs, facet → ridges).
    pub fn contains(&self, rank: Rank, index: usize) -> &[u32] {
        match rank {
            Rank::Ridge | Rank::Facet => &self.levels[rank.level()].contains[index],
            _ => &[],
        }
    }

    /// Faces one rank higher containing this face (sub → ridges, ridge → facets).
    pub fn containing(&self, rank: Rank, index: usize) -> &[u32] {
        match rank {
            Rank::Sub | Rank::Ridge => &self.levels[rank.level()].up[index],
            _ => &[],
        }
    }

    /// Whether the stored (n-3)-faces are the vertices (`n = 3`).
    pub fn subs_are_vertices(&self) -> bool {
        self.ambient_dim == 3
    }

    /// Incidence counts f_{k,l} between the provided ranks.
    pub fn incidences(&self) -> Incidences {
        let sub_ridge = self.levels[1].contains.iter().map(Vec::len).sum();
        let ridge_facet = self.levels[2].contains.iter().map(Vec::len).sum();
        let mut sub_facet = 0;
        let mut seen: Vec<u32> = Vec::new();
        for contains in &self.levels[2].contains {
            seen.clear();
            for &r in contains {
                seen.extend_from_slice(&self.levels[1].contains[r as usize]);
            }
            seen.sort_unstable();
            seen.dedup();
            sub_facet += seen.len();
        }
        Incidences { sub_ridge, sub_facet, ridge_facet }
    }

    /// Same poset with faces of each rank permuted: new index `perm[old]`.
    /// For `n = 3` the sub-face permutation is the vertex permutation.
    pub fn reindexed(
        &self,
        vertex_perm: &[usize],
        sub_perm: &[usize],
        ridge_perm: &[usize],
        facet_perm: &[usize],
    ) -> FacePoset {
        let sub_perm = if self.subs_are_vertices() { vertex_perm } else { sub_perm };
        let permute = |level: &Level, perm: &[usize], lower: &[usize]| -> Vec<FaceSpec> {
            let mut out = vec![FaceSpec::default(); level.vertices.len()];
            for (old, &new) in perm.iter().enumerate() {
                out[new] = FaceSpec {
                    vertices: level.vertices[old].iter().map(|&v| vertex_perm[v as usize] as u32).collect(),
                    contains: level.contains[old].iter().map(|&c| lower[c as usize] as u32).collect(),
                };
            }
            out
        };
        let subs = if self.subs_are_vertices() { Vec::new() } else { permute(&self.levels[0], sub_perm, &[]) };
        let ridges = permute(&self.levels[1], ridge_perm, sub_perm);
        let facets = permute(&self.levels[2], facet_perm, ridge_perm);
        FacePoset::new(self.ambient_dim, self.num_vertices, subs, ridges, facets).expect("permutation keeps links")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Incidences {
    pub sub_ridge: usize,
    pub sub_facet: usize,
    pub ridge_facet: usize,
}
