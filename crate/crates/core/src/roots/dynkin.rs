//! Identification of Cartan matrices against the finite-type catalogue.

use num_bigint::BigInt;
use num_traits::One;
use petgraph::algo::subgraph_isomorphisms_iter;
use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;

use crate::arith::{rat, ri, Rat};
use crate::error::{Error, Result};

/// One simple factor: its type and the indices of its simple roots, in
/// Bourbaki order, within the full (reordered) simple system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub kind: char,
    pub n: usize,
    pub nodes: Vec<usize>,
}

impl Component {
    pub fn label(&self) -> String {
        format!("{}{}", self.kind, self.n)
    }
}

/// Squared lengths and off-diagonal inner products of the simple roots of a
/// finite type in Bourbaki numbering, long roots of length² 2.
pub fn bourbaki_form(kind: char, n: usize) -> Option<Vec<Vec<Rat>>> {
    let mut b = vec![vec![Rat::from_integer(0.into()); n]; n];
    let chain = |b: &mut Vec<Vec<Rat>>, i: usize, j: usize, v: Rat| {
        b[i][j] = v.clone();
        b[j][i] = v;
    };
    match (kind, n) {
        ('A', n) if n >= 1 => {
            for i in 0..n {
                b[i][i] = ri(2);
                if i + 1 < n {
                    chain(&mut b, i, i + 1, ri(-1));
                }
            }
        }
        ('B', n) if n >= 2 => {
            for i in 0..n {
                b[i][i] = if i + 1 == n { ri(1) } else { ri(2) };
                if i + 1 < n {
                    chain(&mut b, i, i + 1, ri(-1));
                }
            }
        }
        ('C', n) if n >= 2 => {
            for i in 0..n {
                b[i][i] = if i + 1 == n { ri(2) } else { ri(1) };
                if i + 1 < n {
                    chain(&mut b, i, i + 1, if i + 2 == n { ri(-1) } else { rat(-1, 2) });
                }
            }
        }
        ('D', n) if n >= 4 => {
            for i in 0..n {
                b[i][i] = ri(2);
            }
            for i in 0..n - 2 {
                chain(&mut b, i, i + 1, ri(-1));
            }
            chain(&mut b, n - 3, n - 1, ri(-1));
        }
        ('E', n) if (6..=8).contains(&n) => {
            for i in 0..n {
                b[i][i] = ri(2);
            }
            chain(&mut b, 0, 2, ri(-1));
            chain(&mut b, 1, 3, ri(-1));
            for i in 2..n - 1 {
                chain(&mut b, i, i + 1, ri(-1));
            }
        }
        ('F', 4) => {
            for (i, l) in [2, 2, 1, 1].iter().enumerate() {
                b[i][i] = ri(*l);
            }
            chain(&mut b, 0, 1, ri(-1));
            chain(&mut b, 1, 2, ri(-1));
            chain(&mut b, 2, 3, rat(-1, 2));
        }
        ('G', 2) => {
            b[0][0] = rat(2, 3);
            b[1][1] = ri(2);
            chain(&mut b, 0, 1, ri(-1));
        }
        _ => return None,
    }
    Some(b)
}

/// Cartan matrix `A[i][j] = 2 B_ij / B_jj` of a Bourbaki form.
pub fn bourbaki_cartan(kind: char, n: usize) -> Option<Vec<Vec<i64>>> {
    let b = bourbaki_form(kind, n)?;
    Some((0..n).map(|i| (0..n).map(|j| rat::to_i64(&(ri(2) * &b[i][j] / &b[j][j])).expect("integral Cartan entry")).collect()).collect())
}

fn diagram(c: &[Vec<i64>], nodes: &[usize]) -> DiGraph<(), (i64, i64)> {
    let mut g = DiGraph::new();
    let ix: Vec<_> = nodes.iter().map(|_| g.add_node(())).collect();
    for (a, &i) in nodes.iter().enumerate() {
        for (b, &j) in nodes.iter().enumerate() {
            if i != j && c[i][j] != 0 {
                g.add_edge(ix[a], ix[b], (c[i][j], c[j][i]));
            }
        }
    }
    g
}

const KINDS: [char; 7] = ['A', 'B', 'C', 'D', 'E', 'F', 'G'];

/// Matches `nodes` of `c` against the catalogue; returns the type and the
/// nodes listed in Bourbaki order.
fn identify(c: &[Vec<i64>], nodes: &[usize]) -> Option<(char, Vec<usize>)> {
    let n = nodes.len();
    let target = diagram(c, nodes);
    for kind in KINDS {
        let Some(cat) = bourbaki_cartan(kind, n) else { continue };
        let all: Vec<usize> = (0..n).collect();
        let model = diagram(&cat, &all);
        if model.edge_count() != target.edge_count() {
            continue;
        }
        let mut nm = |_: &(), _: &()| true;
        let mut em = |x: &(i64, i64), y: &(i64, i64)| x == y;
        let (m, t) = (&model, &target);
        let found = subgraph_isomorphisms_iter(&m, &t, &mut nm, &mut em).and_then(|mut it| it.next());
        if let Some(m) = found {
            return Some((kind, m.iter().map(|&k| nodes[k]).collect()));
        }
    }
    None
}

/// Splits a Cartan matrix into simple factors ordered by first node, each
/// identified and put in Bourbaki order. Returns the components (with node
/// indices into the reordered system) and the reordering permutation.
pub fn classify(c: &[Vec<i64>]) -> Result<(Vec<Component>, Vec<usize>)> {
    let n = c.len();
    let mut uf = UnionFind::<usize>::new(n);
    for i in 0..n {
        for j in 0..n {
            if c[i][j] != 0 {
                uf.union(i, j);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![];
    for i in 0..n {
        let r = uf.find(i);
        match groups.iter_mut().find(|g| uf.find(g[0]) == r) {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }
    let mut order = vec![];
    let mut comps = vec![];
    for g in groups {
        let (kind, ordered) = identify(c, &g).ok_or_else(|| Error::UnrecognizedDiagram(format!("{g:?} of {c:?}")))?;
        let start = order.len();
        comps.push(Component { kind, n: g.len(), nodes: (start..start + g.len()).collect() });
        order.extend(ordered);
    }
    Ok((comps, order))
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * k)
}

/// Order of the Weyl group of a finite type.
pub fn weyl_group_order(kind: char, n: usize) -> BigInt {
    let n64 = n as u64;
    match kind {
        'A' => factorial(n64 + 1),
        'B' | 'C' => BigInt::from(2).pow(n as u32) * factorial(n64),
        'D' => BigInt::from(2).pow(n as u32 - 1) * factorial(n64),
        'E' => match n {
            6 => 51_840.into(),
            7 => 2_903_040.into(),
            _ => 696_729_600.into(),
        },
        'F' => 1152.into(),
        _ => 12.into(),
    }
}

/// Order of the parabolic subgroup generated by the reflections in `subset`.
pub fn weyl_order(c: &[Vec<i64>], subset: &[usize]) -> Result<BigInt> {
    if subset.is_empty() {
        return Ok(BigInt::one());
    }
    let sub: Vec<Vec<i64>> = subset.iter().map(|&i| subset.iter().map(|&j| c[i][j]).collect()).collect();
    let (comps, _) = classify(&sub)?;
    Ok(comps.iter().map(|k| weyl_group_order(k.kind, k.n)).product())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_matrices_identify_as_themselves() {
        for (k, n) in [('A', 1), ('A', 5), ('B', 3), ('C', 3), ('D', 4), ('D', 6), ('E', 6), ('E', 7), ('E', 8), ('F', 4), ('G', 2)] {
            let c = bourbaki_cartan(k, n).unwrap();
            let (comps, order) = classify(&c).unwrap();
            assert_eq!(comps.len(), 1);
            assert_eq!(comps[0].label(), format!("{k}{n}"));
            let permuted: Vec<Vec<i64>> = order.iter().map(|&i| order.iter().map(|&j| c[i][j]).collect()).collect();
            assert_eq!(permuted, c, "{k}{n}");
        }
    }

    #[test]
    fn shuffled_e8_is_put_back_in_order() {
        let c = bourbaki_cartan('E', 8).unwrap();
        let p = [5, 2, 7, 0, 3, 6, 1, 4];
        let shuffled: Vec<Vec<i64>> = p.iter().map(|&i| p.iter().map(|&j| c[i][j]).collect()).collect();
        let (comps, order) = classify(&shuffled).unwrap();
        assert_eq!(comps[0].label(), "E8");
        let back: Vec<Vec<i64>> = order.iter().map(|&i| order.iter().map(|&j| shuffled[i][j]).collect()).collect();
        assert_eq!(back, c);
    }

    #[test]
    fn products_and_weyl_orders() {
        let mut c = vec![vec![0i64; 4]; 4];
        let a2 = bourbaki_cartan('A', 2).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                c[i][j] = a2[i][j];
                c[i + 2][j + 2] = a2[i][j];
            }
        }
        let (comps, _) = classify(&c).unwrap();
        assert_eq!(comps.iter().map(|k| k.label()).collect::<Vec<_>>(), vec!["A2", "A2"]);
        assert_eq!(weyl_order(&c, &[0, 1, 2, 3]).unwrap(), BigInt::from(36));
        assert_eq!(weyl_order(&bourbaki_cartan('E', 8).unwrap(), &[0, 1, 2, 3, 4, 5, 6]).unwrap(), BigInt::from(2_903_040));
    }
}
