//! Orbits of permutation generators acting on arbitrary hashable points.

use std::collections::HashMap;
use std::hash::Hash;

use crate::perm::Permutation;

/// Orbit of a point under `<gens>` for an action `act(point, g)`.
pub fn orbit_points<P, F>(gens: &[Permutation], start: P, act: F) -> Vec<P>
where
    P: Clone + Eq + Hash,
    F: Fn(&P, &Permutation) -> P,
{
    let mut index: HashMap<P, usize> = HashMap::new();
    let mut points = vec![start.clone()];
    index.insert(start, 0);
    let mut k = 0;
    while k < points.len() {
        for g in gens {
            let img = act(&points[k], g);
            if !index.contains_key(&img) {
                index.insert(img.clone(), points.len());
                points.push(img);
            }
        }
        k += 1;
    }
    points
}

/// An orbit together with a transversal: `transversal[i]` maps the start
/// point to `points[i]`.
#[derive(Clone, Debug)]
pub struct OrbitTransversal<P> {
    pub points: Vec<P>,
    pub index: HashMap<P, usize>,
    pub transversal: Vec<Permutation>,
}

impl<P: Clone + Eq + Hash> OrbitTransversal<P> {
    pub fn compute<F>(degree: usize, gens: &[Permutation], start: P, act: F) -> Self
    where
        F: Fn(&P, &Permutation) -> P,
    {
        let mut out = OrbitTransversal {
            points: vec![start.clone()],
            index: HashMap::from([(start, 0)]),
            transversal: vec![Permutation::identity(degree)],
        };
        let mut k = 0;
        while k < out.points.len() {
            for g in gens {
                let img = act(&out.points[k], g);
                if !out.index.contains_key(&img) {
                    out.index.insert(img.clone(), out.points.len());
                    out.points.push(img);
                    out.transversal.push(out.transversal[k].mul_unchecked(g));
                }
            }
            k += 1;
        }
        out
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Schreier generators `t_p * g * t_{p^g}^-1` of the stabilizer of the
    /// start point, identities and repeats dropped.
    pub fn schreier_generators<F>(&self, gens: &[Permutation], act: F) -> Vec<Permutation>
    where
        F: Fn(&P, &Permutation) -> P,
    {
        let mut out: Vec<Permutation> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (k, p) in self.points.iter().enumerate() {
            for g in gens {
                let img = act(p, g);
                let j = self.index[&img];
                let s = self.transversal[k]
                    .mul_unchecked(g)
                    .mul_unchecked(&self.transversal[j].inverse());
                if !s.is_identity() && seen.insert(s.clone()) {
                    out.push(s);
                }
            }
        }
        out
    }
}
