#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};

use horokit::groups::GroupElement;
use horokit::spaces::SpokePoint;
use horokit::{frac, rat, FiniteMetricSpace, Rat};

/// Horofunctions of tree ends restricted to the given ball of `F_rank`:
/// `h(x) = |x| - 2 |common prefix of x and the end|`, over every reduced
/// prefix of length `r`.
pub fn tree_end_restrictions(rank: usize, r: usize, order: &[GroupElement]) -> BTreeSet<Vec<Rat>> {
    let letters: Vec<i32> = (1..=rank as i32).flat_map(|a| [a, -a]).collect();
    let mut prefixes: Vec<Vec<i32>> = vec![vec![]];
    for _ in 0..r {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p| {
                letters
                    .iter()
                    .filter(|&&l| p.last() != Some(&-l))
                    .map(|&l| {
                        let mut q = p.clone();
                        q.push(l);
                        q
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    prefixes
        .iter()
        .map(|end| {
            order
                .iter()
                .map(|g| {
                    let GroupElement::Free(w) = g else {
                        panic!("not a free group element")
                    };
                    let common = w
                        .letters()
                        .iter()
                        .zip(end)
                        .take_while(|(a, b)| a == b)
                        .count();
                    rat(w.letters().len() as i64 - 2 * common as i64)
                })
                .collect()
        })
        .collect()
}

fn zd(g: &GroupElement) -> &[i64] {
    match g {
        GroupElement::Zd(v) => v,
        _ => panic!("not a lattice point"),
    }
}

fn l1(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).sum()
}

/// `{h_x restricted to order : |x|_1 = big_r}` by direct l1 arithmetic.
pub fn l1_sphere_restrictions(
    dim: usize,
    big_r: i64,
    order: &[GroupElement],
) -> BTreeSet<Vec<Rat>> {
    let mut out = BTreeSet::new();
    let mut x = vec![-big_r; dim];
    loop {
        if l1(&x) == big_r {
            out.insert(
                order
                    .iter()
                    .map(|y| {
                        let d: Vec<i64> = zd(y).iter().zip(&x).map(|(a, b)| a - b).collect();
                        rat(l1(&d) - big_r)
                    })
                    .collect(),
            );
        }
        let mut i = 0;
        while i < dim {
            x[i] += 1;
            if x[i] <= big_r {
                break;
            }
            x[i] = -big_r;
            i += 1;
        }
        if i == dim {
            return out;
        }
    }
}

/// Limit horofunctions of `Z^d` on `B(r)`: sums of per-coordinate terms
/// `-y`, `+y` or `|y - c| - |c|` with `|c| < r`, not all of the last kind.
pub fn lattice_limit_oracle(dim: usize, r: i64, order: &[GroupElement]) -> BTreeSet<Vec<Rat>> {
    // term 0: -y, term 1: +y, term 2 + k: finite with c = k - (r - 1)
    let terms = 2 + (2 * r - 1).max(0) as usize;
    let eval = |t: usize, y: i64| -> i64 {
        match t {
            0 => -y,
            1 => y,
            k => {
                let c = k as i64 - 2 - (r - 1);
                (y - c).abs() - c.abs()
            }
        }
    };
    let mut out = BTreeSet::new();
    let mut choice = vec![0usize; dim];
    loop {
        if choice.iter().any(|&t| t < 2) {
            out.insert(
                order
                    .iter()
                    .map(|y| rat(zd(y).iter().zip(&choice).map(|(&yi, &t)| eval(t, yi)).sum()))
                    .collect(),
            );
        }
        let mut i = 0;
        while i < dim {
            choice[i] += 1;
            if choice[i] < terms {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == dim {
            return out;
        }
    }
}

/// Spoke-ray space discretized in quarter steps: ray `[0, len]`, spokes
/// `1..=spokes` of length `n - 1/2`, heads joined to the hub by length 1.
pub struct SpokeGraph {
    index: HashMap<SpokePoint, usize>,
    adj: Vec<Vec<(usize, u64)>>,
}

impl SpokeGraph {
    pub fn new(len: u64, spokes: u64) -> Self {
        let mut g = SpokeGraph {
            index: HashMap::new(),
            adj: Vec::new(),
        };
        let ray = |q: u64| {
            if q == 0 {
                SpokePoint::Hub
            } else {
                SpokePoint::ray(frac(q as i64, 4)).unwrap()
            }
        };
        for q in 0..4 * len {
            g.edge(ray(q), ray(q + 1), 1);
        }
        for n in 1..=spokes {
            let head = SpokePoint::head(n).unwrap();
            g.edge(SpokePoint::Hub, head.clone(), 4);
            let quarters = 4 * n - 2;
            let mut prev = head;
            for s in 1..quarters {
                let p = SpokePoint::interior(n, frac(s as i64, 4)).unwrap();
                g.edge(prev, p.clone(), 1);
                prev = p;
            }
            g.edge(prev, ray(4 * n), 1);
        }
        g
    }

    fn node(&mut self, p: SpokePoint) -> usize {
        let n = self.index.len();
        let i = *self.index.entry(p).or_insert(n);
        if i == self.adj.len() {
            self.adj.push(Vec::new());
        }
        i
    }

    fn edge(&mut self, a: SpokePoint, b: SpokePoint, w: u64) {
        let (i, j) = (self.node(a), self.node(b));
        self.adj[i].push((j, w));
        self.adj[j].push((i, w));
    }

    /// Distances from `p` to every node, in quarters.
    pub fn distances_from(&self, p: &SpokePoint) -> HashMap<SpokePoint, Rat> {
        let src = self.index[p];
        let mut dist = vec![u64::MAX; self.adj.len()];
        dist[src] = 0;
        let mut heap = BinaryHeap::from([Reverse((0u64, src))]);
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &(v, w) in &self.adj[u] {
                if d + w < dist[v] {
                    dist[v] = d + w;
                    heap.push(Reverse((d + w, v)));
                }
            }
        }
        self.index
            .iter()
            .map(|(q, &i)| (q.clone(), frac(dist[i] as i64, 4)))
            .collect()
    }
}

/// Pointwise min and max over every 1-Lipschitz extension of `f` with
/// values on the grid `step * Z`.
pub fn brute_force_extension_envelope(
    space: &FiniteMetricSpace,
    domain: &[usize],
    values: &[Rat],
    step: Rat,
) -> (Vec<Rat>, Vec<Rat>) {
    let m = space.matrix();
    let n = space.len();
    let free: Vec<usize> = (0..n).filter(|p| !domain.contains(p)).collect();
    let mut assigned: Vec<Option<Rat>> = vec![None; n];
    for (a, v) in domain.iter().zip(values) {
        assigned[*a] = Some(*v);
    }
    // candidate ranges from the domain constraints alone
    let ranges: Vec<Vec<Rat>> = free
        .iter()
        .map(|&p| {
            let lo = domain
                .iter()
                .zip(values)
                .map(|(a, v)| *v - m[p][*a])
                .max()
                .unwrap();
            let hi = domain
                .iter()
                .zip(values)
                .map(|(a, v)| *v + m[p][*a])
                .min()
                .unwrap();
            let mut out = Vec::new();
            let mut v = (lo / step).floor() * step;
            while v <= hi {
                if v >= lo {
                    out.push(v);
                }
                v += step;
            }
            out
        })
        .collect();
    let mut lo = vec![None::<Rat>; n];
    let mut hi = vec![None::<Rat>; n];
    let mut idx = vec![0usize; free.len()];
    if ranges.iter().any(|r| r.is_empty()) {
        panic!("empty candidate range");
    }
    loop {
        let mut vals = assigned.clone();
        for (k, &p) in free.iter().enumerate() {
            vals[p] = Some(ranges[k][idx[k]]);
        }
        let vals: Vec<Rat> = vals.into_iter().map(Option::unwrap).collect();
        let lipschitz = (0..n).all(|i| (0..n).all(|j| (vals[i] - vals[j]) <= m[i][j]));
        if lipschitz {
            for i in 0..n {
                lo[i] = Some(lo[i].map_or(vals[i], |x: Rat| x.min(vals[i])));
                hi[i] = Some(hi[i].map_or(vals[i], |x: Rat| x.max(vals[i])));
            }
        }
        let mut k = 0;
        while k < free.len() {
            idx[k] += 1;
            if idx[k] < ranges[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == free.len() {
            break;
        }
    }
    (
        lo.into_iter().map(Option::unwrap).collect(),
        hi.into_iter().map(Option::unwrap).collect(),
    )
}
