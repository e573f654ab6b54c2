//! Dessins d'enfants as bipartite combinatorial maps.
//!
//! The edge set is `{0..d-1}`. White vertices are the cycles of `s1`, black
//! vertices the cycles of `s2`, and faces the cycles of `s3 = (s1 . s2)^-1`;
//! a face coming from a `k`-cycle is a `2k`-gon. Vertices and faces are
//! numbered by increasing least edge.
//!
//! Face walks: starting from the least edge `e` of the face, cross `e` from
//! white to black, turn at the black vertex to `s2(e)`, cross it back from
//! black to white, turn at the white vertex to `s1(s2(e))`, and repeat until
//! the walk returns to `e`. Side `2i` is a white-to-black side and side
//! `2i + 1` a black-to-white one; corner `j` is the vertex at the start of
//! side `j`.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::search::Constellation;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    White,
    Black,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub color: Color,
    pub id: usize,
}

impl Vertex {
    pub fn label(&self) -> String {
        match self.color {
            Color::White => format!("w{}", self.id),
            Color::Black => format!("b{}", self.id),
        }
    }
}

/// Orientation in which a face walk runs along an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SideDirection {
    WhiteToBlack,
    BlackToWhite,
}

impl SideDirection {
    pub fn index(self) -> usize {
        match self {
            SideDirection::WhiteToBlack => 0,
            SideDirection::BlackToWhite => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Side {
    pub edge: usize,
    pub direction: SideDirection,
}

/// Boundary of the abstract polygon closing up a face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk {
    pub face_id: usize,
    pub sides: Vec<Side>,
    pub corners: Vec<Vertex>,
}

impl FaceWalk {
    /// Number of polygon sides, `2k`.
    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }
}

/// Where a side of an edge sits: face and position in that face's walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SideLocation {
    pub face: usize,
    pub position: usize,
}

#[derive(Debug, Clone)]
pub struct Dessin {
    white: Permutation,
    black: Permutation,
    face_perm: Permutation,
    white_vertices: Vec<Vec<usize>>,
    black_vertices: Vec<Vec<usize>>,
    faces: Vec<Vec<usize>>,
    white_of_edge: Vec<usize>,
    black_of_edge: Vec<usize>,
    walks: Vec<FaceWalk>,
    /// Per edge: location of its white-to-black and black-to-white sides.
    sides: Vec<[SideLocation; 2]>,
}

/// Cycles rotated to start at their minimum, ordered by minimum.
fn cycles_by_min(p: &Permutation) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut cycles = p.cycles().into_cycles();
    cycles.sort_by_key(|c| c[0]);
    let mut owner = vec![0; p.degree()];
    for (id, c) in cycles.iter().enumerate() {
        for &e in c {
            owner[e] = id;
        }
    }
    (cycles, owner)
}

impl Dessin {
    pub fn from_constellation(c: &Constellation) -> Result<Dessin> {
        let [white, black, third] = c.sigmas() else {
            return Err(Error::NotThreePoint(c.sigmas().len()));
        };
        let face_perm = white.compose(black)?.inverse();
        if &face_perm != third {
            return Err(Error::InvalidConstellation(
                "product of the three permutations is not the identity".into(),
            ));
        }
        Ok(Self::from_rotations(white.clone(), black.clone()))
    }

    /// Dessin with the given white and black rotations; faces are implied.
    pub fn from_rotations(white: Permutation, black: Permutation) -> Dessin {
        let d = white.degree();
        let face_perm = white.compose(&black).expect("same degree").inverse();
        let (white_vertices, white_of_edge) = cycles_by_min(&white);
        let (black_vertices, black_of_edge) = cycles_by_min(&black);
        let (faces, _) = cycles_by_min(&face_perm);
        let unset = SideLocation {
            face: usize::MAX,
            position: usize::MAX,
        };
        let mut sides = vec![[unset; 2]; d];
        let mut walks = Vec::with_capacity(faces.len());
        for (face_id, face) in faces.iter().enumerate() {
            let mut walk = FaceWalk {
                face_id,
                sides: Vec::with_capacity(2 * face.len()),
                corners: Vec::with_capacity(2 * face.len()),
            };
            let mut e = face[0];
            for _ in 0..face.len() {
                let back = black.apply(e);
                for (edge, direction) in [
                    (e, SideDirection::WhiteToBlack),
                    (back, SideDirection::BlackToWhite),
                ] {
                    sides[edge][direction.index()] = SideLocation {
                        face: face_id,
                        position: walk.sides.len(),
                    };
                    walk.sides.push(Side { edge, direction });
                }
                walk.corners.push(Vertex {
                    color: Color::White,
                    id: white_of_edge[e],
                });
                walk.corners.push(Vertex {
                    color: Color::Black,
                    id: black_of_edge[e],
                });
                e = white.apply(back);
            }
            debug_assert_eq!(e, face[0]);
            walks.push(walk);
        }
        Dessin {
            white,
            black,
            face_perm,
            white_vertices,
            black_vertices,
            faces,
            white_of_edge,
            black_of_edge,
            walks,
            sides,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.white.degree()
    }

    pub fn white_rotation(&self) -> &Permutation {
        &self.white
    }

    pub fn black_rotation(&self) -> &Permutation {
        &self.black
    }

    pub fn face_permutation(&self) -> &Permutation {
        &self.face_perm
    }

    pub fn white_vertices(&self) -> &[Vec<usize>] {
        &self.white_vertices
    }

    pub fn black_vertices(&self) -> &[Vec<usize>] {
        &self.black_vertices
    }

    /// Face cycles of `s3`, each starting at its least edge.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.white_vertices.len() + self.black_vertices.len()
    }

    /// White and black endpoints of an edge.
    pub fn endpoints(&self, edge: usize) -> (Vertex, Vertex) {
        (
            Vertex {
                color: Color::White,
                id: self.white_of_edge[edge],
            },
            Vertex {
                color: Color::Black,
                id: self.black_of_edge[edge],
            },
        )
    }

    pub fn side_location(&self, edge: usize, direction: SideDirection) -> SideLocation {
        self.sides[edge][direction.index()]
    }

    /// `V - E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic()) / 2
    }

    pub fn face_boundary(&self, face_id: usize) -> Result<&FaceWalk> {
        self.walks.get(face_id).ok_or(Error::BadFaceId {
            id: face_id,
            faces: self.faces.len(),
        })
    }

    pub fn face_walks(&self) -> &[FaceWalk] {
        &self.walks
    }

    /// Whether the closure of the face is an embedded polygon: its corners
    /// are pairwise distinct and so are the edges along its sides.
    pub fn is_face_embedded(&self, face_id: usize) -> Result<bool> {
        let walk = self.face_boundary(face_id)?;
        let mut corners = HashSet::new();
        let mut edges = HashSet::new();
        Ok(walk.corners.iter().all(|v| corners.insert(*v))
            && walk.sides.iter().all(|s| edges.insert(s.edge)))
    }

    pub fn to_json(&self) -> DessinJson {
        DessinJson {
            degree: self.edge_count(),
            white_vertices: self.white_vertices.clone(),
            black_vertices: self.black_vertices.clone(),
            faces: self
                .walks
                .iter()
                .map(|w| FaceJson {
                    id: w.face_id,
                    size: w.len(),
                    edges: self.faces[w.face_id].clone(),
                    sides: w
                        .sides
                        .iter()
                        .map(|s| [s.edge, s.direction.index()])
                        .collect(),
                    corners: w.corners.iter().map(Vertex::label).collect(),
                    embedded: self.is_face_embedded(w.face_id).expect("valid face"),
                })
                .collect(),
        }
    }

    /// Graphviz rendering: white vertices as circles, black ones filled, one
    /// graph edge per dessin edge; face data in comments.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph dessin {\n");
        for w in &self.walks {
            let sides: Vec<String> = w.sides.iter().map(|s| format!("e{}", s.edge)).collect();
            let _ = writeln!(
                out,
                "  // face {}: {}-gon, sides {}, embedded {}",
                w.face_id,
                w.len(),
                sides.join(" "),
                self.is_face_embedded(w.face_id).expect("valid face")
            );
        }
        for id in 0..self.white_vertices.len() {
            let _ = writeln!(out, "  w{id} [shape=circle, label=\"w{id}\"];");
        }
        for id in 0..self.black_vertices.len() {
            let _ = writeln!(
                out,
                "  b{id} [shape=circle, style=filled, fillcolor=black, fontcolor=white, label=\"b{id}\"];"
            );
        }
        for e in 0..self.edge_count() {
            let (w, b) = self.endpoints(e);
            let _ = writeln!(out, "  {} -- {} [label=\"e{e}\"];", w.label(), b.label());
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DessinJson {
    pub degree: usize,
    pub white_vertices: Vec<Vec<usize>>,
    pub black_vertices: Vec<Vec<usize>>,
    pub faces: Vec<FaceJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FaceJson {
    pub id: usize,
    pub size: usize,
    pub edges: Vec<usize>,
    /// `[edge, 0]` for a white-to-black side, `[edge, 1]` for black-to-white.
    pub sides: Vec<[usize; 2]>,
    pub corners: Vec<String>,
    pub embedded: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Partition;
    use crate::perm::{canonical_of_type, enumerate_of_type};

    fn perm(d: usize, s: &str) -> Permutation {
        Permutation::parse(d, s).unwrap()
    }

    fn dessin(d: usize, white: &str, black: &str) -> Dessin {
        let w = perm(d, white);
        let b = perm(d, black);
        let third = w.compose(&b).unwrap().inverse();
        Dessin::from_constellation(&Constellation::new(vec![w, b, third]).unwrap()).unwrap()
    }

    fn edges(walk: &FaceWalk) -> Vec<usize> {
        walk.sides.iter().map(|s| s.edge).collect()
    }

    #[test]
    fn hexagonal_torus() {
        let t = dessin(3, "(0 1 2)", "(0 1 2)");
        assert_eq!((t.white_vertices().len(), t.black_vertices().len()), (1, 1));
        assert_eq!((t.edge_count(), t.face_count()), (3, 1));
        assert_eq!(t.euler_characteristic(), 0);
        let walk = t.face_boundary(0).unwrap();
        assert_eq!(walk.len(), 6);
        assert_eq!(edges(walk), vec![0, 1, 2, 0, 1, 2]);
        let w = Vertex {
            color: Color::White,
            id: 0,
        };
        let b = Vertex {
            color: Color::Black,
            id: 0,
        };
        assert_eq!(walk.corners, vec![w, b, w, b, w, b]);
        assert!(!t.is_face_embedded(0).unwrap());
    }

    #[test]
    fn two_squares_on_the_sphere() {
        let s = dessin(4, "(0 1 2)", "(1 2 3)");
        assert_eq!(s.vertex_count(), 4);
        assert_eq!(s.edge_count(), 4);
        assert_eq!(s.face_count(), 2);
        assert!(s.face_walks().iter().all(|w| w.len() == 4));
        assert_eq!(s.euler_characteristic(), 2);
    }

    #[test]
    fn trivial_bigon() {
        let t = dessin(1, "()", "()");
        assert_eq!(
            (t.vertex_count(), t.edge_count(), t.face_count()),
            (2, 1, 1)
        );
        assert_eq!(t.euler_characteristic(), 2);
        let walk = t.face_boundary(0).unwrap();
        assert_eq!(edges(walk), vec![0, 0]);
        assert!(!t.is_face_embedded(0).unwrap());
    }

    #[test]
    fn theta_bigon_is_embedded() {
        // [[3],[2,1],[2,1]]: faces (0 2) and (1)
        let t = dessin(3, "(0 1 2)", "(0 1)");
        assert_eq!(t.faces(), &[vec![0, 2], vec![1]]);
        let bigon = t.face_boundary(1).unwrap();
        assert_eq!(edges(bigon), vec![1, 0]);
        assert_eq!(
            bigon.corners,
            vec![
                Vertex {
                    color: Color::White,
                    id: 0
                },
                Vertex {
                    color: Color::Black,
                    id: 0
                }
            ]
        );
        assert_eq!(t.black_vertices()[0], vec![0, 1]);
        assert!(t.is_face_embedded(1).unwrap());
        assert!(!t.is_face_embedded(0).unwrap());
        assert_eq!(
            t.face_boundary(2),
            Err(Error::BadFaceId { id: 2, faces: 2 })
        );
        assert!(t.is_face_embedded(7).is_err());
    }

    #[test]
    fn rejects_non_constellations() {
        let c = Constellation::new(vec![perm(3, "(0 1 2)"), perm(3, "(0 1 2)")]).unwrap();
        assert_eq!(
            Dessin::from_constellation(&c).unwrap_err(),
            Error::NotThreePoint(2)
        );
        let c = Constellation::new(
            vec![perm(3, "(0 1 2)"); 2]
                .into_iter()
                .chain([Permutation::identity(3)])
                .collect(),
        )
        .unwrap();
        assert!(matches!(
            Dessin::from_constellation(&c),
            Err(Error::InvalidConstellation(_))
        ));
    }

    #[test]
    fn degree_nine_torus_has_an_embedded_hexagon() {
        let pi = Partition::from_parts(vec![3, 3, 3]).unwrap();
        let white = canonical_of_type(&pi);
        let found = enumerate_of_type(&pi).any(|black| {
            let third = white.compose(&black).unwrap().inverse();
            if third.cycle_type() != pi
                || !crate::perm::is_transitive(&[white.clone(), black.clone()], 9).unwrap()
            {
                return false;
            }
            let d = Dessin::from_rotations(white.clone(), black);
            assert_eq!(d.euler_characteristic(), 0);
            (0..d.face_count()).any(|f| d.is_face_embedded(f).unwrap())
        });
        assert!(found);
    }

    #[test]
    fn walks_cover_every_side_once() {
        let pi = Partition::from_parts(vec![2, 2, 1, 1]).unwrap();
        for white in enumerate_of_type(&Partition::from_parts(vec![3, 2, 1]).unwrap()) {
            for black in enumerate_of_type(&pi) {
                let d = Dessin::from_rotations(white.clone(), black);
                let total: usize = d.face_walks().iter().map(FaceWalk::len).sum();
                assert_eq!(total, 12);
                let mut seen = HashSet::new();
                for w in d.face_walks() {
                    assert_eq!(w.len(), 2 * d.faces()[w.face_id].len());
                    for (i, (s, v)) in w.sides.iter().zip(&w.corners).enumerate() {
                        assert!(seen.insert((s.edge, s.direction)));
                        let expected = if i % 2 == 0 {
                            Color::White
                        } else {
                            Color::Black
                        };
                        assert_eq!(v.color, expected);
                        let loc = d.side_location(s.edge, s.direction);
                        assert_eq!((loc.face, loc.position), (w.face_id, i));
                    }
                }
            }
        }
    }

    #[test]
    fn dot_output() {
        let dot = dessin(3, "(0 1 2)", "(0 1)").to_dot();
        assert!(dot.starts_with("graph dessin {\n"));
        assert!(dot.contains("  // face 1: 2-gon, sides e1 e0, embedded true\n"));
        assert!(dot.contains("  w0 -- b1 [label=\"e2\"];\n"));
        assert!(dot.contains("style=filled"));
    }
}
