//! Exact convex hulls by beneath-beyond, with faces rebuilt recursively.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};

use super::frame::Frame;
use super::linalg::{cofactor_normal, det, dot};
use super::{lex_cmp, Point};
use crate::error::{Error, Result};
use crate::exactnum::{factorial, LogLinear, Rational};

/// A supporting hyperplane `normal . x <= offset` (within the affine span),
/// together with the face it cuts out.
#[derive(Debug, Clone)]
pub struct Facet {
    /// Outward normal in raw coordinates; zero off the span's chosen columns.
    pub normal: Vec<LogLinear>,
    pub offset: LogLinear,
    /// Indices into the parent's vertex list.
    pub vertices: Vec<usize>,
    face: Polytope,
}

impl Facet {
    pub fn polytope(&self) -> &Polytope {
        &self.face
    }
}

#[derive(Debug, Clone)]
pub struct Polytope {
    ambient_dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
    frame: Frame,
}

/// Convex hull of a nonempty point set; at most one coordinate may be irrational.
pub fn convex_hull(points: &[Point]) -> Result<Polytope> {
    let first = points.first().ok_or(Error::Empty("point set"))?;
    let d = first.len();
    if d > super::MAX_DIM + 1 {
        return Err(Error::UnsupportedDimension(d));
    }
    let mut seen = HashSet::new();
    let mut pts: Vec<Point> = Vec::new();
    for p in points {
        if p.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: p.len() });
        }
        if seen.insert(p.clone()) {
            pts.push(p.clone());
        }
    }
    let frame = Frame::new(&pts)?;
    let k = frame.dim();

    let planes: Vec<(Vec<LogLinear>, LogLinear)> = match k {
        0 => {
            return Ok(Polytope { ambient_dim: d, vertices: vec![pts[0].clone()], facets: vec![], frame });
        }
        1 => {
            let c = frame.chosen[0];
            let mut lo = 0;
            let mut hi = 0;
            for i in 1..pts.len() {
                if pts[i][c].cmp_value(&pts[lo][c]) == Ordering::Less {
                    lo = i;
                }
                if pts[i][c].cmp_value(&pts[hi][c]) == Ordering::Greater {
                    hi = i;
                }
            }
            vec![
                (vec![LogLinear::from_integer(-1)], -&pts[lo][c]),
                (vec![LogLinear::from_integer(1)], pts[hi][c].clone()),
            ]
        }
        _ => {
            let proj: Vec<Vec<LogLinear>> = pts.iter().map(|p| frame.project(p)).collect();
            hyperplanes(&proj, &frame.simplex)?
        }
    };

    let mut faces = Vec::with_capacity(planes.len());
    for (normal, offset) in planes {
        let mut on = Vec::new();
        for p in &pts {
            if dot(&normal, &frame.project(p))? == offset {
                on.push(p.clone());
            }
        }
        let mut raw = vec![LogLinear::zero(); d];
        for (t, &c) in frame.chosen.iter().enumerate() {
            raw[c] = normal[t].clone();
        }
        faces.push((raw, offset, convex_hull(&on)?));
    }

    let mut vertices: Vec<Point> = Vec::new();
    let mut have = HashSet::new();
    for (_, _, f) in &faces {
        for v in &f.vertices {
            if have.insert(v.clone()) {
                vertices.push(v.clone());
            }
        }
    }
    vertices.sort_by(|a, b| lex_cmp(a, b));
    let index: HashMap<&Point, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut facets: Vec<Facet> = faces
        .into_iter()
        .map(|(normal, offset, face)| {
            let mut vs: Vec<usize> = face.vertices.iter().map(|v| index[v]).collect();
            vs.sort_unstable();
            Facet { normal, offset, vertices: vs, face }
        })
        .collect();
    facets.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(Polytope { ambient_dim: d, vertices, facets, frame })
}

struct SimplexFacet {
    verts: Vec<usize>,
    normal: Vec<LogLinear>,
    offset: LogLinear,
}

fn ridges_of(verts: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..verts.len()).map(move |j| {
        let mut r = verts.to_vec();
        r.remove(j);
        r
    })
}

/// Facet hyperplanes of a full-dimensional point set in `R^k`, `k >= 2`,
/// starting from the affinely independent `simplex`.
fn hyperplanes(pts: &[Vec<LogLinear>], simplex: &[usize]) -> Result<Vec<(Vec<LogLinear>, LogLinear)>> {
    let k = pts[0].len();
    let weight = Rational::from_integer((k + 1).into()).recip();
    let interior: Vec<LogLinear> = (0..k)
        .map(|c| simplex.iter().map(|&i| &pts[i][c]).sum::<LogLinear>().scale(&weight))
        .collect();

    let make = |mut verts: Vec<usize>| -> Result<SimplexFacet> {
        verts.sort_unstable();
        let base = &pts[verts[0]];
        let rows: Vec<Vec<LogLinear>> =
            verts[1..].iter().map(|&v| pts[v].iter().zip(base).map(|(a, b)| a - b).collect()).collect();
        let mut normal = cofactor_normal(&rows)?;
        let mut offset = dot(&normal, base)?;
        if (dot(&normal, &interior)? - &offset).is_positive() {
            normal = normal.iter().map(|x| -x).collect();
            offset = -offset;
        }
        Ok(SimplexFacet { verts, normal, offset })
    };

    let mut facets: Vec<Option<SimplexFacet>> = Vec::new();
    let mut ridges: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    let add = |f: SimplexFacet, facets: &mut Vec<Option<SimplexFacet>>, ridges: &mut BTreeMap<Vec<usize>, Vec<usize>>| {
        let id = facets.len();
        for r in ridges_of(&f.verts) {
            ridges.entry(r).or_default().push(id);
        }
        facets.push(Some(f));
    };

    for j in 0..simplex.len() {
        let verts: Vec<usize> = simplex.iter().enumerate().filter(|(t, _)| *t != j).map(|(_, &v)| v).collect();
        add(make(verts)?, &mut facets, &mut ridges);
    }

    let in_simplex: HashSet<usize> = simplex.iter().copied().collect();
    for (i, p) in pts.iter().enumerate() {
        if in_simplex.contains(&i) {
            continue;
        }
        let mut visible = HashSet::new();
        for (id, f) in facets.iter().enumerate() {
            if let Some(f) = f {
                if (dot(&f.normal, p)? - &f.offset).is_positive() {
                    visible.insert(id);
                }
            }
        }
        if visible.is_empty() {
            continue;
        }
        let mut visible: Vec<usize> = visible.into_iter().collect();
        visible.sort_unstable();
        let mut horizon = Vec::new();
        for &id in &visible {
            let verts = facets[id].as_ref().expect("visible facet is alive").verts.clone();
            for r in ridges_of(&verts) {
                let across = ridges[&r].iter().copied().find(|&g| g != id);
                if across.is_some_and(|g| visible.binary_search(&g).is_err()) {
                    horizon.push(r);
                }
            }
        }
        for &id in &visible {
            let f = facets[id].take().expect("visible facet is alive");
            for r in ridges_of(&f.verts) {
                if let Some(list) = ridges.get_mut(&r) {
                    list.retain(|&g| g != id);
                    if list.is_empty() {
                        ridges.remove(&r);
                    }
                }
            }
        }
        for mut r in horizon {
            r.push(i);
            add(make(r)?, &mut facets, &mut ridges);
        }
    }

    // merge coplanar neighbours
    let mut parent: Vec<usize> = (0..facets.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (r, ids) in &ridges {
        if let [f, g] = ids.as_slice() {
            let (ff, gg) = (facets[*f].as_ref().unwrap(), facets[*g].as_ref().unwrap());
            let w = gg.verts.iter().copied().find(|v| !r.contains(v)).expect("facet has a vertex off the ridge");
            if dot(&ff.normal, &pts[w])? == ff.offset {
                let (a, b) = (find(&mut parent, *f), find(&mut parent, *g));
                parent[a] = b;
            }
        }
    }
    let mut out = Vec::new();
    for id in 0..facets.len() {
        if facets[id].is_some() && find(&mut parent, id) == id {
            let f = facets[id].as_ref().unwrap();
            out.push((f.normal.clone(), f.offset.clone()));
        }
    }
    Ok(out)
}

impl Polytope {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn affine_dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.ambient_dim
    }

    /// Extreme points, sorted lexicographically.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub(crate) fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn vertex_index(&self, p: &[LogLinear]) -> Option<usize> {
        self.vertices.iter().position(|v| v.as_slice() == p)
    }

    /// Membership with certified signs.
    pub fn contains(&self, p: &[LogLinear]) -> Result<bool> {
        if !self.frame.contains(p)? {
            return Ok(false);
        }
        if self.affine_dim() == 0 {
            return Ok(self.vertices[0].as_slice() == p);
        }
        for f in &self.facets {
            if (dot(&f.normal, p)? - &f.offset).is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Pulling triangulation: the fan from the first (lexicographically
    /// least) vertex over the triangulated facets not containing it. Each
    /// simplex lists `affine_dim + 1` vertex indices.
    pub fn triangulation(&self) -> Vec<Vec<usize>> {
        if self.affine_dim() == 0 {
            return vec![vec![0]];
        }
        let mut out = Vec::new();
        for f in &self.facets {
            if f.vertices.contains(&0) {
                continue;
            }
            for s in f.face.triangulation() {
                let mut simplex = vec![0];
                for i in s {
                    let global = self.vertex_index(&f.face.vertices[i]).expect("facet vertex is a vertex");
                    simplex.push(global);
                }
                out.push(simplex);
            }
        }
        out
    }

    /// Ambient-dimensional volume; zero unless full-dimensional. A point in
    /// `R^0` has volume 1.
    pub fn volume(&self) -> LogLinear {
        if !self.is_full_dimensional() {
            return LogLinear::zero();
        }
        let k = self.ambient_dim;
        let mut total = LogLinear::zero();
        for s in self.triangulation() {
            total += simplex_volume(&s.iter().map(|&i| &self.vertices[i]).collect::<Vec<_>>());
        }
        total.div_rational(&factorial(k))
    }

    /// Minkowski sum by hulling pairwise vertex sums.
    pub fn minkowski_sum(&self, other: &Polytope) -> Result<Polytope> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim, found: other.ambient_dim });
        }
        let mut sums = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                sums.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        convex_hull(&sums)
    }

    pub fn face_lattice(&self) -> FaceLattice {
        let mut sets: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        self.collect_faces(&mut sets);
        let top = self.affine_dim();
        let mut by_dim: Vec<Vec<Face>> = vec![Vec::new(); top + 1];
        for (vertices, dim) in sets {
            by_dim[dim].push(Face { dim, vertices, facets: vec![] });
        }
        for dim in 1..=top {
            let (lower, upper) = by_dim.split_at_mut(dim);
            for face in upper[0].iter_mut() {
                face.facets = lower[dim - 1]
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| g.vertices.iter().all(|v| face.vertices.binary_search(v).is_ok()))
                    .map(|(i, _)| i)
                    .collect();
            }
        }
        FaceLattice { by_dim }
    }

    fn collect_faces(&self, out: &mut BTreeMap<Vec<usize>, usize>) {
        out.insert((0..self.vertices.len()).collect(), self.affine_dim());
        for f in &self.facets {
            let mut sub = BTreeMap::new();
            f.face.collect_faces(&mut sub);
            for (vs, dim) in sub {
                let mut mapped: Vec<usize> =
                    vs.iter().map(|&i| self.vertex_index(&f.face.vertices[i]).expect("face vertex")).collect();
                mapped.sort_unstable();
                out.insert(mapped, dim);
            }
        }
    }

    /// Polytope spanned by a subset of the vertices.
    pub fn sub_polytope(&self, vertex_indices: &[usize]) -> Result<Polytope> {
        let pts: Vec<Point> = vertex_indices.iter().map(|&i| self.vertices[i].clone()).collect();
        convex_hull(&pts)
    }
}

/// `|det(v_1 - v_0, ..., v_k - v_0)|` for `k + 1` points of `R^k`.
pub(crate) fn simplex_volume(vs: &[&Point]) -> LogLinear {
    let rows: Vec<Vec<LogLinear>> =
        vs[1..].iter().map(|v| v.iter().zip(vs[0].iter()).map(|(a, b)| a - b).collect()).collect();
    det(&rows).expect("at most one irrational column").abs()
}

/// A face given by its vertex indices, and the indices of its own facets
/// among the faces one dimension lower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub dim: usize,
    pub vertices: Vec<usize>,
    pub facets: Vec<usize>,
}

/// Nonempty faces of a polytope, grouped by dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceLattice {
    by_dim: Vec<Vec<Face>>,
}

impl FaceLattice {
    pub fn faces(&self, dim: usize) -> &[Face] {
        self.by_dim.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self) -> usize {
        self.by_dim.len() - 1
    }

    pub fn iter(&self) -> impl Iterator<Item = &Face> {
        self.by_dim.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    pub fn find(&self, vertices: &[usize]) -> Option<&Face> {
        let mut key = vertices.to_vec();
        key.sort_unstable();
        self.iter().find(|f| f.vertices == key)
    }
}
