use thiserror::Error;

use super::poset::{FacePoset, Rank};

/// Cyclic link of an (n-3)-face: `cycle[i] = (ridge, facet)` where the facet
/// joins `cycle[i].0` and `cycle[i + 1].0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Star {
    pub center: usize,
    pub cycle: Vec<(u32, u32)>,
}

impl Star {
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    pub fn ridges(&self) -> impl Iterator<Item = u32> + '_ {
        self.cycle.iter().map(|c| c.0)
    }

    /// Flattened alternating sequence ridge, facet, ridge, facet, ...
    pub fn alternating(&self) -> Vec<u32> {
        self.cycle.iter().flat_map(|&(r, f)| [r, f]).collect()
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum StarError {
    #[error("link of face {center} is not a single cycle")]
    NotManifoldAtFace { center: usize },
    #[error("link of face {center} has length {length}, need at least 3")]
    ShortLink { center: usize, length: usize },
}

impl StarError {
    pub fn center(&self) -> usize {
        match *self {
            StarError::NotManifoldAtFace { center } | StarError::ShortLink { center, .. } => center,
        }
    }
}

/// Walks the link graph of sub-face `center` (nodes: incident ridges, edges:
/// incident facets). Work is `O(d log d)` for `d` incident ridges.
pub fn extract_star(poset: &FacePoset, center: usize) -> Result<Star, StarError> {
    let ridges = poset.containing(Rank::Sub, center);
    let bad = StarError::NotManifoldAtFace { center };
    // (facet, position of ridge in `ridges`)
    let mut ends: Vec<(u32, u32)> = Vec::with_capacity(2 * ridges.len());
    for (pos, &r) in ridges.iter().enumerate() {
        let facets = poset.containing(Rank::Ridge, r as usize);
        if facets.len() != 2 || facets[0] == facets[1] {
            return Err(bad);
        }
        ends.extend(facets.iter().map(|&f| (f, pos as u32)));
    }
    ends.sort_unstable();
    // Each facet through the center must meet the link in exactly two ridges.
    let mut adj: Vec<[(u32, u32); 2]> = vec![[(u32::MAX, u32::MAX); 2]; ridges.len()];
    let mut fill = vec![0u8; ridges.len()];
    let mut i = 0;
    while i < ends.len() {
        if i + 1 >= ends.len() || ends[i + 1].0 != ends[i].0 || (i + 2 < ends.len() && ends[i + 2].0 == ends[i].0) {
            return Err(bad);
        }
        let (f, a) = ends[i];
        let b = ends[i + 1].1;
        for (x, y) in [(a, b), (b, a)] {
            let slot = &mut fill[x as usize];
            adj[x as usize][*slot as usize] = (f, y);
            *slot += 1;
        }
        i += 2;
    }
    if ridges.len() < 3 {
        return Err(StarError::ShortLink { center, length: ridges.len() });
    }
    let mut cycle = Vec::with_capacity(ridges.len());
    let mut seen = vec![false; ridges.len()];
    let (mut cur, mut via) = (0u32, adj[0][0].0);
    loop {
        seen[cur as usize] = true;
        let next = adj[cur as usize].iter().copied().find(|&(f, _)| f == via).expect("adjacency is symmetric");
        cycle.push((ridges[cur as usize], next.0));
        let (_, to) = next;
        let back = adj[to as usize].iter().copied().find(|&(f, _)| f != via);
        cur = to;
        match back {
            Some((f, _)) => via = f,
            None => return Err(bad),
        }
        if seen[cur as usize] {
            break;
        }
    }
    if cur != 0 || cycle.len() != ridges.len() {
        return Err(bad);
    }
    Ok(Star { center, cycle })
}

/// Lexicographically least rotation or reflection of a cyclic sequence of
/// alternating ridge/facet ids. Used to compare stars in tests.
pub fn canonicalize(seq: &[u32]) -> Vec<u32> {
    let k = seq.len();
    let mut best: Option<Vec<u32>> = None;
    let mut reversed = seq.to_vec();
    reversed.reverse();
    for base in [seq.to_vec(), reversed] {
        for s in 0..k {
            let rot: Vec<u32> = (0..k).map(|i| base[(s + i) % k]).collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.unwrap_or_default()
}
