//! Free polyominoes: enumeration by growth, canonical forms under the
//! dihedral group, and the bitmap and corner-graph representations.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::matrix::BinaryMatrix;

pub const MAX_ENUMERATION_SIZE: usize = 10;

pub type Cell = (i32, i32);

/// An edge-connected set of unit cells, `(x, y)` with `y` growing
/// downwards, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polyomino {
    cells: Vec<Cell>,
}

const NEIGHBOURS: [Cell; 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

impl Polyomino {
    pub fn new(cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let set: BTreeSet<Cell> = cells.into_iter().collect();
        if set.is_empty() {
            return Err(Error::invalid("polyomino needs at least one cell"));
        }
        let cells: Vec<Cell> = set.into_iter().collect();
        if !connected(&cells) {
            return Err(Error::invalid("cells are not edge-connected"));
        }
        Ok(Polyomino { cells })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    /// Image under one of the 8 symmetries of the square (`0..4` are
    /// rotations, `4..8` the same rotations after a mirror).
    pub fn transform(&self, t: u8) -> Polyomino {
        let f = |(x, y): Cell| -> Cell {
            let (x, y) = if t >= 4 { (-x, y) } else { (x, y) };
            match t % 4 {
                0 => (x, y),
                1 => (-y, x),
                2 => (-x, -y),
                _ => (y, -x),
            }
        };
        let mut cells: Vec<Cell> = self.cells.iter().map(|&c| f(c)).collect();
        cells.sort_unstable();
        Polyomino { cells }
    }

    /// Translated so the minimum x and y are 0.
    pub fn normalized(&self) -> Polyomino {
        let min_x = self.cells.iter().map(|c| c.0).min().unwrap();
        let min_y = self.cells.iter().map(|c| c.1).min().unwrap();
        let mut cells: Vec<Cell> = self
            .cells
            .iter()
            .map(|&(x, y)| (x - min_x, y - min_y))
            .collect();
        cells.sort_unstable();
        Polyomino { cells }
    }

    /// Lexicographically least normalized cell list over the dihedral
    /// group.
    pub fn canonical(&self) -> Polyomino {
        (0..8)
            .map(|t| self.transform(t).normalized())
            .min()
            .unwrap()
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }

    fn bounds(&self) -> (i32, i32, i32, i32) {
        let xs = self.cells.iter().map(|c| c.0);
        let ys = self.cells.iter().map(|c| c.1);
        (
            xs.clone().min().unwrap(),
            xs.max().unwrap(),
            ys.clone().min().unwrap(),
            ys.max().unwrap(),
        )
    }

    /// Minimal bounding-box array with 1 for occupied cells; rows follow y.
    pub fn bitmap(&self) -> BinaryMatrix {
        let (x0, x1, y0, y1) = self.bounds();
        let mut m = BinaryMatrix::zeros((y1 - y0 + 1) as usize, (x1 - x0 + 1) as usize);
        for &(x, y) in &self.cells {
            m.set((y - y0) as usize, (x - x0) as usize, 1);
        }
        m
    }

    /// True when some empty cell is enclosed by the polyomino.
    pub fn has_hole(&self) -> bool {
        let (x0, x1, y0, y1) = self.bounds();
        let occupied: HashSet<Cell> = self.cells.iter().copied().collect();
        let inside =
            |(x, y): Cell| (x0 - 1..=x1 + 1).contains(&x) && (y0 - 1..=y1 + 1).contains(&y);
        let mut seen = HashSet::from([(x0 - 1, y0 - 1)]);
        let mut queue = VecDeque::from([(x0 - 1, y0 - 1)]);
        while let Some((x, y)) = queue.pop_front() {
            for (dx, dy) in NEIGHBOURS {
                let c = (x + dx, y + dy);
                if inside(c) && !occupied.contains(&c) && seen.insert(c) {
                    queue.push_back(c);
                }
            }
        }
        let box_cells = ((x1 - x0 + 3) * (y1 - y0 + 3)) as usize;
        seen.len() + occupied.len() < box_cells
    }

    /// Lattice graph of the cell boundaries: nodes are cell corners, edges
    /// are unit sides of at least one cell. Nodes are numbered row-major
    /// by `(y, x)`.
    pub fn corner_graph(&self) -> Result<Graph> {
        if self.has_hole() {
            return Err(Error::Unsupported(
                "corner graph of a polyomino with holes".into(),
            ));
        }
        let mut corners = BTreeSet::new();
        let mut segments = BTreeSet::new();
        for &(x, y) in &self.cells {
            let c = [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)];
            corners.extend(c);
            for (a, b) in [(c[0], c[1]), (c[2], c[3]), (c[0], c[2]), (c[1], c[3])] {
                segments.insert((a, b));
            }
        }
        let mut order: Vec<Cell> = corners.into_iter().collect();
        order.sort_by_key(|&(x, y)| (y, x));
        let index = |p: Cell| {
            order
                .binary_search_by_key(&(p.1, p.0), |&(x, y)| (y, x))
                .unwrap()
        };
        Graph::new(
            order.len(),
            segments.into_iter().map(|(a, b)| (index(a), index(b))),
        )
    }

    pub fn to_line(&self) -> String {
        self.to_string()
    }

    pub fn parse_line(line: &str) -> Result<Self> {
        let cells = line
            .split_whitespace()
            .map(|tok| {
                let (x, y) = tok
                    .split_once(',')
                    .ok_or_else(|| Error::invalid(format!("cell {tok:?} is not `x,y`")))?;
                let parse = |s: &str| {
                    s.parse::<i32>()
                        .map_err(|e| Error::invalid(format!("bad coordinate {s:?}: {e}")))
                };
                Ok((parse(x)?, parse(y)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Polyomino::new(cells)
    }
}

impl fmt::Display for Polyomino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, y)) in self.cells.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x},{y}")?;
        }
        Ok(())
    }
}

/// Parses one polyomino per non-empty line; errors carry the line number.
pub fn parse_list(text: &str) -> Result<Vec<Polyomino>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| Polyomino::parse_line(l).map_err(|e| Error::parse(i + 1, e.to_string())))
        .collect()
}

fn connected(cells: &[Cell]) -> bool {
    let set: HashSet<Cell> = cells.iter().copied().collect();
    let mut seen = HashSet::from([cells[0]]);
    let mut stack = vec![cells[0]];
    while let Some((x, y)) = stack.pop() {
        for (dx, dy) in NEIGHBOURS {
            let c = (x + dx, y + dy);
            if set.contains(&c) && seen.insert(c) {
                stack.push(c);
            }
        }
    }
    seen.len() == cells.len()
}

/// One canonical representative per free polyomino of size `n`, sorted.
/// Each level grows every polyomino of the previous level by one boundary
/// cell.
pub fn enumerate_free(n: usize) -> Result<Vec<Polyomino>> {
    if !(1..=MAX_ENUMERATION_SIZE).contains(&n) {
        return Err(Error::SizeGuard {
            what: "polyomino enumeration",
            size: n,
            limit: MAX_ENUMERATION_SIZE,
        });
    }
    let mut level = vec![Polyomino {
        cells: vec![(0, 0)],
    }];
    for _ in 1..n {
        let next: BTreeSet<Polyomino> = level
            .par_iter()
            .map(|p| {
                let occupied: HashSet<Cell> = p.cells.iter().copied().collect();
                let mut grown = BTreeSet::new();
                for &(x, y) in &p.cells {
                    for (dx, dy) in NEIGHBOURS {
                        let c = (x + dx, y + dy);
                        if !occupied.contains(&c) {
                            let mut cells = p.cells.clone();
                            cells.push(c);
                            cells.sort_unstable();
                            grown.insert(Polyomino { cells }.canonical());
                        }
                    }
                }
                grown
            })
            .reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                a
            });
        level = next.into_iter().collect();
    }
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cells: &[Cell]) -> Polyomino {
        Polyomino::new(cells.iter().copied()).unwrap()
    }

    #[test]
    fn rejects_disconnected_and_empty() {
        assert!(Polyomino::new([(0, 0), (1, 1)]).is_err());
        assert!(Polyomino::new([]).is_err());
    }

    #[test]
    fn free_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| enumerate_free(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 12, 35, 108, 369]);
        assert!(enumerate_free(0).is_err());
        assert!(enumerate_free(11).is_err());
    }

    #[test]
    fn ten_cells() {
        // 4655 free decominoes, 195 of them with holes
        let all = enumerate_free(10).unwrap();
        assert_eq!(all.len(), 4655);
        assert_eq!(all.iter().filter(|p| p.has_hole()).count(), 195);
    }

    #[test]
    fn outputs_are_connected_and_canonical() {
        for n in 1..=7 {
            for p in enumerate_free(n).unwrap() {
                assert_eq!(p.size(), n);
                assert!(connected(p.cells()));
                for t in 0..8 {
                    assert_eq!(p.transform(t).canonical(), p);
                }
                let from_bitmap = bitmap_cells(&p.bitmap());
                assert_eq!(from_bitmap.canonical(), p);
            }
        }
    }

    fn bitmap_cells(m: &BinaryMatrix) -> Polyomino {
        let mut cells = Vec::new();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if m.get(r, c) == 1 {
                    cells.push((c as i32, r as i32));
                }
            }
        }
        poly(&cells)
    }

    #[test]
    fn bitmaps() {
        assert_eq!(
            poly(&[(0, 0)]).bitmap(),
            BinaryMatrix::from_rows(&["1"]).unwrap()
        );
        let straight = poly(&[(0, 0), (1, 0), (2, 0), (3, 0)]);
        assert_eq!(straight.bitmap(), BinaryMatrix::filled(1, 4, 1));
        let t = poly(&[(0, 0), (1, 0), (2, 0), (1, 1)]);
        assert_eq!(
            t.bitmap(),
            BinaryMatrix::from_rows(&["111", "010"]).unwrap()
        );
        for n in 1..=6 {
            for p in enumerate_free(n).unwrap() {
                let m = p.bitmap();
                for r in 0..m.rows() {
                    assert!((0..m.cols()).any(|c| m.get(r, c) == 1));
                }
                for c in 0..m.cols() {
                    assert!((0..m.rows()).any(|r| m.get(r, c) == 1));
                }
            }
        }
    }

    #[test]
    fn corner_graphs() {
        let mono = poly(&[(0, 0)]).corner_graph().unwrap();
        assert_eq!((mono.node_count(), mono.edge_count()), (4, 4));
        assert!(crate::graphs::isomorphic(&mono, &crate::graphs::cycle(4)).unwrap());

        let domino = poly(&[(0, 0), (1, 0)]).corner_graph().unwrap();
        assert_eq!((domino.node_count(), domino.edge_count()), (6, 7));

        let square = poly(&[(0, 0), (1, 0), (0, 1), (1, 1)])
            .corner_graph()
            .unwrap();
        assert_eq!((square.node_count(), square.edge_count()), (9, 12));
        // row-major numbering: first row of corners is 0, 1, 2
        assert!(square.has_edge(0, 1) && square.has_edge(1, 2) && square.has_edge(0, 3));
    }

    /// Recount unit segments directly from the cell list.
    #[test]
    fn corner_graph_edge_recount() {
        for n in 1..=6 {
            for p in enumerate_free(n).unwrap() {
                let g = p.corner_graph().unwrap();
                let mut segs = HashSet::new();
                for &(x, y) in p.cells() {
                    segs.insert(((x, y), (x + 1, y)));
                    segs.insert(((x, y + 1), (x + 1, y + 1)));
                    segs.insert(((x, y), (x, y + 1)));
                    segs.insert(((x + 1, y), (x + 1, y + 1)));
                }
                assert_eq!(g.edge_count(), segs.len());
                assert!(g.is_connected());
            }
        }
    }

    #[test]
    fn holes_are_refused() {
        let ring = poly(&[
            (0, 0),
            (1, 0),
            (2, 0),
            (0, 1),
            (2, 1),
            (0, 2),
            (1, 2),
            (2, 2),
        ]);
        assert!(ring.has_hole());
        assert!(matches!(ring.corner_graph(), Err(Error::Unsupported(_))));
        let u = poly(&[(0, 0), (2, 0), (0, 1), (1, 1), (2, 1)]);
        assert!(!u.has_hole());
    }

    #[test]
    fn text_lines() {
        let p = poly(&[(0, 0), (1, 0), (1, 1)]);
        assert_eq!(p.to_line(), "0,0 1,0 1,1");
        assert_eq!(Polyomino::parse_line(&p.to_line()).unwrap(), p);
        let list = parse_list("0,0 1,0\n\n0,0\n").unwrap();
        assert_eq!(list.len(), 2);
        match parse_list("0,0\n0;1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }
}
