//! Finite groupoids and their algebras (groups are one-object groupoids).

use serde::{Deserialize, Serialize};

use super::wants_star;
use crate::error::{Result, WhaError};
use crate::field::Field;
use crate::linear::{vector, Mat, Tensor3};
use crate::wha::Wha;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Morphism {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A finite groupoid. `products` lists every composite g∘h as (g, h, gh);
/// g∘h is defined exactly when source(g) = target(h).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Groupoid {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub products: Vec<(usize, usize, usize)>,
}

struct Validated {
    table: Vec<Vec<Option<usize>>>,
    identities: Vec<usize>,
    inverse: Vec<usize>,
}

impl Groupoid {
    /// One-object groupoid from a group table.
    pub fn from_group_table(table: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Groupoid> {
        let n = table.len();
        if table.iter().any(|r| r.len() != n) {
            return Err(WhaError::InvalidInput("group table must be square".into()));
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| format!("g{i}")).collect());
        if labels.len() != n {
            return Err(WhaError::InvalidInput("label count differs from group order".into()));
        }
        let morphisms =
            labels.into_iter().map(|label| Morphism { label, source: 0, target: 0 }).collect();
        let mut products = Vec::with_capacity(n * n);
        for (g, row) in table.iter().enumerate() {
            for (h, &gh) in row.iter().enumerate() {
                products.push((g, h, gh));
            }
        }
        let g = Groupoid { objects: vec!["*".into()], morphisms, products };
        g.validate()?;
        Ok(g)
    }

    /// Arrows with source/target as given by `target, source` → label.
    pub fn relabel(&mut self, label: impl Fn(usize, usize) -> String) {
        for m in &mut self.morphisms {
            m.label = label(m.target, m.source);
        }
    }

    /// G × (pair groupoid on k objects): arrows (g, a ← b).
    pub fn group_times_pair(table: &[Vec<usize>], k: usize) -> Result<Groupoid> {
        let g = table.len();
        let idx = |x: usize, a: usize, b: usize| (x * k + a) * k + b;
        let mut morphisms = Vec::with_capacity(g * k * k);
        for x in 0..g {
            for a in 0..k {
                for b in 0..k {
                    morphisms.push(Morphism { label: format!("g{x}:{a}{b}"), source: b, target: a });
                }
            }
        }
        let mut products = Vec::new();
        for x in 0..g {
            for y in 0..g {
                for a in 0..k {
                    for b in 0..k {
                        for d in 0..k {
                            products.push((idx(x, a, b), idx(y, b, d), idx(table[x][y], a, d)));
                        }
                    }
                }
            }
        }
        let out = Groupoid { objects: (0..k).map(|a| format!("o{a}")).collect(), morphisms, products };
        out.validate()?;
        Ok(out)
    }

    /// Disjoint union of two groupoids.
    pub fn disjoint_union(&self, other: &Groupoid) -> Groupoid {
        let no = self.objects.len();
        let nm = self.morphisms.len();
        let mut objects = self.objects.clone();
        objects.extend(other.objects.iter().map(|o| format!("{o}'")));
        let mut morphisms = self.morphisms.clone();
        morphisms.extend(other.morphisms.iter().map(|m| Morphism {
            label: format!("{}'", m.label),
            source: m.source + no,
            target: m.target + no,
        }));
        let mut products = self.products.clone();
        products.extend(other.products.iter().map(|(g, h, gh)| (g + nm, h + nm, gh + nm)));
        Groupoid { objects, morphisms, products }
    }

    fn validate(&self) -> Result<Validated> {
        let bad = |msg: String| Err(WhaError::InvalidInput(msg));
        let n = self.morphisms.len();
        let k = self.objects.len();
        for m in &self.morphisms {
            if m.source >= k || m.target >= k {
                return bad(format!("morphism {} refers to a missing object", m.label));
            }
        }
        let mut table = vec![vec![None; n]; n];
        for &(g, h, gh) in &self.products {
            if g >= n || h >= n || gh >= n {
                return bad(format!("product ({g}, {h}, {gh}) out of range"));
            }
            let (mg, mh, mgh) = (&self.morphisms[g], &self.morphisms[h], &self.morphisms[gh]);
            if mg.source != mh.target {
                return bad(format!("{} and {} are not composable", mg.label, mh.label));
            }
            if mgh.source != mh.source || mgh.target != mg.target {
                return bad(format!("{} has wrong endpoints for {}∘{}", mgh.label, mg.label, mh.label));
            }
            if table[g][h].is_some_and(|x| x != gh) {
                return bad(format!("conflicting products for ({}, {})", mg.label, mh.label));
            }
            table[g][h] = Some(gh);
        }
        for g in 0..n {
            for h in 0..n {
                if self.morphisms[g].source == self.morphisms[h].target && table[g][h].is_none() {
                    return bad(format!(
                        "missing product {}∘{}",
                        self.morphisms[g].label, self.morphisms[h].label
                    ));
                }
            }
        }
        for g in 0..n {
            for h in 0..n {
                let Some(gh) = table[g][h] else { continue };
                for l in 0..n {
                    let Some(hl) = table[h][l] else { continue };
                    if table[gh][l] != table[g][hl] {
                        return bad("composition is not associative".into());
                    }
                }
            }
        }
        let mut identities = Vec::with_capacity(k);
        for u in 0..k {
            let id = (0..n).find(|&e| {
                let m = &self.morphisms[e];
                m.source == u
                    && m.target == u
                    && (0..n).all(|h| self.morphisms[h].target != u || table[e][h] == Some(h))
                    && (0..n).all(|g| self.morphisms[g].source != u || table[g][e] == Some(g))
            });
            match id {
                Some(e) => identities.push(e),
                None => return bad(format!("object {} has no identity", self.objects[u])),
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let m = &self.morphisms[g];
            let inv = (0..n).find(|&h| {
                table[g][h] == Some(identities[m.target]) && table[h][g] == Some(identities[m.source])
            });
            match inv {
                Some(h) => inverse.push(h),
                None => return bad(format!("{} has no inverse", m.label)),
            }
        }
        Ok(Validated { table, identities, inverse })
    }

    /// Δ(g) = g⊗g, ε(g) = 1, S(g) = g⁻¹, and g* = g⁻¹ over ℂ.
    pub fn algebra<F: Field>(&self, field: &F) -> Result<Wha<F>> {
        let v = self.validate()?;
        let n = self.morphisms.len();
        let mut mult = Vec::new();
        for g in 0..n {
            for h in 0..n {
                if let Some(gh) = v.table[g][h] {
                    mult.push((g, h, gh, field.one()));
                }
            }
        }
        let comult: Vec<_> = (0..n).map(|g| (g, g, g, field.one())).collect();
        let mut unit = vector::zeros(field, n);
        for &e in &v.identities {
            unit[e] = field.one();
        }
        let inv = Mat::from_fn(field, n, n, |i, j| if v.inverse[j] == i { field.one() } else { field.zero() });
        let star = wants_star(field).then(|| inv.clone());
        Wha::new(
            field.clone(),
            self.morphisms.iter().map(|m| m.label.clone()).collect(),
            Tensor3::new(field, [n, n, n], mult)?,
            unit,
            Tensor3::new(field, [n, n, n], comult)?,
            vec![field.one(); n],
            inv,
            star,
        )
    }
}

/// Pair groupoid on k objects: one arrow a ← b for every pair, labelled "e_ab".
pub fn pair_groupoid(k: usize) -> Groupoid {
    let idx = |a: usize, b: usize| a * k + b;
    let mut morphisms = Vec::with_capacity(k * k);
    for a in 0..k {
        for b in 0..k {
            morphisms.push(Morphism { label: format!("e_{a}{b}"), source: b, target: a });
        }
    }
    let mut products = Vec::new();
    for a in 0..k {
        for b in 0..k {
            for d in 0..k {
                products.push((idx(a, b), idx(b, d), idx(a, d)));
            }
        }
    }
    Groupoid { objects: (0..k).map(|a| format!("o{a}")).collect(), morphisms, products }
}

/// ℤ_n with g_i g_j = g_{i+j}.
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect()
}

/// S₃ as permutations of {0,1,2}, identity first; (pq)(i) = p(q(i)).
pub fn symmetric3_table() -> (Vec<Vec<usize>>, Vec<String>) {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
    let table = (0..6)
        .map(|a| {
            (0..6)
                .map(|b| {
                    let (p, q) = (perms[a], perms[b]);
                    index([p[q[0]], p[q[1]], p[q[2]]])
                })
                .collect()
        })
        .collect();
    let labels = perms.iter().map(|p| format!("[{}{}{}]", p[0], p[1], p[2])).collect();
    (table, labels)
}
