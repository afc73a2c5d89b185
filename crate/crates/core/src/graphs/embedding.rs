//! Oriented face lists: consistent orientation, dart-to-face lookup and
//! the cyclic order of faces around each vertex.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

pub(crate) struct Embedding {
    pub n: usize,
    pub faces: Vec<Vec<usize>>,
    /// Directed side `(a, b)` → index of the face traversing it as a → b.
    dart_face: HashMap<(usize, usize), usize>,
}

impl Embedding {
    pub fn new(n: usize, faces: &[Vec<usize>]) -> Result<Self> {
        let faces = orient(faces)?;
        let mut dart_face = HashMap::new();
        for (i, f) in faces.iter().enumerate() {
            for (a, b) in sides(f) {
                if dart_face.insert((a, b), i).is_some() {
                    return Err(Error::invalid(format!("side ({a}, {b}) traversed twice")));
                }
            }
        }
        for &(a, b) in dart_face.keys() {
            if !dart_face.contains_key(&(b, a)) {
                return Err(Error::invalid(format!(
                    "side ({a}, {b}) is on a single face"
                )));
            }
        }
        Ok(Embedding {
            n,
            faces,
            dart_face,
        })
    }

    pub fn face_of(&self, a: usize, b: usize) -> usize {
        self.dart_face[&(a, b)]
    }

    pub fn pred(&self, f: usize, v: usize) -> usize {
        let face = &self.faces[f];
        let i = face.iter().position(|&x| x == v).expect("node on face");
        face[(i + face.len() - 1) % face.len()]
    }

    /// Neighbours of `v` in cyclic order, each paired with the face that
    /// traverses the dart `v → w`.
    pub fn rotation(&self, v: usize) -> Vec<(usize, usize)> {
        let start = self
            .dart_face
            .keys()
            .filter(|&&(a, _)| a == v)
            .map(|&(_, b)| b)
            .min()
            .expect("every node lies on a face");
        let mut out = Vec::new();
        let mut w = start;
        loop {
            let f = self.face_of(v, w);
            out.push((w, f));
            w = self.pred(f, v);
            if w == start {
                break;
            }
            if out.len() > self.faces.len() {
                panic!("rotation around {v} does not close");
            }
        }
        out
    }

    /// Undirected edges, each reported once as the dart `(u, v)` with
    /// `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self
            .dart_face
            .keys()
            .filter(|&&(a, b)| a < b)
            .copied()
            .collect();
        e.sort_unstable();
        e
    }
}

fn sides(face: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..face.len()).map(move |i| (face[i], face[(i + 1) % face.len()]))
}

/// Reverses faces as needed so that every edge is traversed once in each
/// direction.
pub(crate) fn orient(faces: &[Vec<usize>]) -> Result<Vec<Vec<usize>>> {
    let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, f) in faces.iter().enumerate() {
        for (a, b) in sides(f) {
            by_edge.entry((a.min(b), a.max(b))).or_default().push(i);
        }
    }
    if let Some((e, fs)) = by_edge.iter().find(|(_, fs)| fs.len() != 2) {
        return Err(Error::invalid(format!(
            "edge {e:?} lies on {} faces, expected 2",
            fs.len()
        )));
    }
    let mut out: Vec<Vec<usize>> = faces.to_vec();
    let mut done = vec![false; faces.len()];
    for root in 0..faces.len() {
        if done[root] {
            continue;
        }
        done[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(f) = queue.pop_front() {
            let current = out[f].clone();
            for (a, b) in sides(&current) {
                let fs = &by_edge[&(a.min(b), a.max(b))];
                let g = if fs[0] == f { fs[1] } else { fs[0] };
                let same_direction = sides(&out[g]).any(|s| s == (a, b));
                if !done[g] {
                    if same_direction {
                        out[g].reverse();
                    }
                    done[g] = true;
                    queue.push_back(g);
                } else if same_direction {
                    return Err(Error::invalid("face list is not orientable"));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetra() -> Vec<Vec<usize>> {
        // deliberately mixed orientation
        vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]
    }

    #[test]
    fn orientation_is_fixed_up() {
        let e = Embedding::new(4, &tetra()).unwrap();
        for v in 0..4 {
            let rot = e.rotation(v);
            assert_eq!(rot.len(), 3);
            let mut ws: Vec<_> = rot.iter().map(|&(w, _)| w).collect();
            ws.sort();
            assert_eq!(ws, (0..4).filter(|&x| x != v).collect::<Vec<_>>());
        }
        assert_eq!(e.edges().len(), 6);
    }

    #[test]
    fn open_surface_is_rejected() {
        assert!(orient(&[vec![0, 1, 2], vec![0, 2, 3]]).is_err());
    }
}
