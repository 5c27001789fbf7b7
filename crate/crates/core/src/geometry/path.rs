use alloc::format;
use alloc::vec::Vec;

use crate::group::{GroupModel, Letter, Tracker, Word};
use crate::{Error, Result};

/// A unit-speed edge path in the Cayley graph, stored as a start vertex and
/// the generator labelling each edge. Vertex `i` sits at arc length `i`.
///
/// Storing labels rather than vertices keeps long labelled paths linear in
/// size, and left translation only changes the start vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    start: Word,
    steps: Vec<Letter>,
    end: Word,
}

impl Path {
    pub fn trivial(v: Word) -> Self {
        Path { start: v.clone(), steps: Vec::new(), end: v }
    }

    pub(crate) fn from_parts(start: Word, steps: Vec<Letter>, end: Word) -> Self {
        Path { start, steps, end }
    }

    /// Builds a path from generator labels.
    pub fn from_steps(model: &GroupModel, start: Word, steps: Vec<Letter>) -> Result<Self> {
        let gens = model.generators();
        let mut stack = start.letters().to_vec();
        for s in &steps {
            if !gens.contains(s) {
                return Err(Error::NotAPath(format!("{s:?} is not a generator")));
            }
            model.push_letter(&mut stack, *s);
        }
        Ok(Path { start, steps, end: Word::new(stack) })
    }

    /// Builds a path from a vertex sequence whose consecutive vertices are
    /// equal or adjacent. Repeated vertices carry no arc length and are
    /// dropped.
    pub fn from_vertices(model: &GroupModel, vertices: &[Word]) -> Result<Self> {
        let first = vertices.first().ok_or_else(|| Error::NotAPath("no vertices".into()))?;
        let first = model.reduce(first)?;
        let mut steps = Vec::with_capacity(vertices.len());
        let mut prev = first.clone();
        for v in &vertices[1..] {
            let v = model.reduce(v)?;
            let q = model.multiply(&model.invert(&prev), &v);
            match model.length(&q) {
                0 => {}
                1 => steps.extend(model.generator_steps(&q)),
                d => return Err(Error::NotAPath(format!("consecutive vertices at distance {d}"))),
            }
            prev = v;
        }
        Ok(Path { start: first, steps, end: prev })
    }

    pub fn start(&self) -> &Word {
        &self.start
    }

    pub fn end(&self) -> &Word {
        &self.end
    }

    pub fn steps(&self) -> &[Letter] {
        &self.steps
    }

    /// Arc length `ℓ(p)`.
    pub fn len(&self) -> u64 {
        self.steps.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.steps.len() + 1
    }

    /// Arc length at each vertex; with unit steps this is just the index.
    pub fn cumulative_length(&self) -> Vec<u64> {
        (0..=self.len()).collect()
    }

    pub fn vertices(&self, model: &GroupModel) -> Vec<Word> {
        let mut out = Vec::with_capacity(self.vertex_count());
        let mut stack = self.start.letters().to_vec();
        out.push(self.start.clone());
        for &s in &self.steps {
            model.push_letter(&mut stack, s);
            out.push(Word::new(stack.clone()));
        }
        out
    }

    pub fn vertex(&self, model: &GroupModel, i: usize) -> Word {
        let mut stack = self.start.letters().to_vec();
        for &s in &self.steps[..i] {
            model.push_letter(&mut stack, s);
        }
        Word::new(stack)
    }

    /// Sub-path between vertex indices `from <= to`.
    pub fn subpath(&self, model: &GroupModel, from: usize, to: usize) -> Path {
        assert!(from <= to && to <= self.steps.len(), "subpath range out of bounds");
        let start = self.vertex(model, from);
        let steps = self.steps[from..to].to_vec();
        let mut stack = start.letters().to_vec();
        for &s in &steps {
            model.push_letter(&mut stack, s);
        }
        Path { start, steps, end: Word::new(stack) }
    }

    /// The left translate `g · p`.
    pub fn translate(&self, model: &GroupModel, g: &Word) -> Path {
        Path { start: model.multiply(g, &self.start), steps: self.steps.clone(), end: model.multiply(g, &self.end) }
    }

    pub fn reversed(&self, model: &GroupModel) -> Path {
        Path {
            start: self.end.clone(),
            steps: self.steps.iter().rev().map(|&s| model.invert_step(s)).collect(),
            end: self.start.clone(),
        }
    }

    pub fn concat(&self, other: &Path) -> Result<Path> {
        if self.end != other.start {
            return Err(Error::NotAPath("concatenated paths do not meet".into()));
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Ok(Path { start: self.start.clone(), steps, end: other.end.clone() })
    }

    pub fn is_geodesic(&self, model: &GroupModel) -> bool {
        model.distance(&self.start, &self.end) == self.len()
    }

    /// Distances from vertex `index` to every vertex, in two linear sweeps.
    pub fn distances_from_vertex(&self, model: &GroupModel, index: usize) -> Vec<u64> {
        let mut out = alloc::vec![0u64; self.vertex_count()];
        let mut fwd = Tracker::new(model, &Word::identity());
        for j in index..self.steps.len() {
            fwd.step(self.steps[j]);
            out[j + 1] = fwd.len();
        }
        let mut back = Tracker::new(model, &Word::identity());
        for j in (0..index).rev() {
            back.step(model.invert_step(self.steps[j]));
            out[j] = back.len();
        }
        out
    }

    /// Distances from an arbitrary vertex `x` to every vertex of the path.
    pub fn distances_from(&self, model: &GroupModel, x: &Word) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.vertex_count());
        let mut t = Tracker::new(model, &model.multiply(&model.invert(x), &self.start));
        out.push(t.len());
        for &s in &self.steps {
            t.step(s);
            out.push(t.len());
        }
        out
    }
}
