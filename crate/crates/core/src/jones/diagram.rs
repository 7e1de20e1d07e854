//! The standard planar diagram of `P(a1, ..., an)`: `n` vertical twist
//! regions side by side, neighbouring regions joined at the top and bottom,
//! the outermost pair joined around the outside.
//!
//! Every crossing has four ports. Inside a region the bottom ports of one
//! crossing meet the top ports of the next. Each port lies on exactly one
//! external arc, so a diagram with `c` crossings has `2c` arcs.

use crate::pretzel::{PretzelParams, StrandOrientation};

pub(crate) const NW: usize = 0;
pub(crate) const NE: usize = 1;
pub(crate) const SW: usize = 2;
pub(crate) const SE: usize = 3;

fn through(port: usize) -> usize {
    match port {
        NW => SE,
        SE => NW,
        NE => SW,
        _ => NE,
    }
}

/// Unit direction of travel when entering a crossing at `port`.
fn travel(port: usize) -> (i32, i32) {
    match port {
        NW => (1, -1),
        SW => (1, 1),
        NE => (-1, -1),
        _ => (-1, 1),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WirtingerCrossing {
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub sign: i32,
}

#[derive(Debug, Clone)]
pub struct PretzelDiagram {
    params: Vec<i64>,
    /// Twist region of each crossing.
    region: Vec<usize>,
    /// Arc id of each port (`4 * crossing + port`).
    arc_of: Vec<usize>,
    /// Both ports of each arc.
    arc_ends: Vec<(usize, usize)>,
}

impl PretzelDiagram {
    pub fn new(p: &PretzelParams) -> Self {
        let params = p.as_slice().to_vec();
        let n = params.len();
        let mut first = Vec::with_capacity(n);
        let mut region = Vec::new();
        for (i, a) in params.iter().enumerate() {
            first.push(region.len());
            region.extend(std::iter::repeat_n(i, a.unsigned_abs() as usize));
        }
        let last = |i: usize| first[i] + params[i].unsigned_abs() as usize - 1;
        let port = |c: usize, q: usize| 4 * c + q;

        let mut arc_ends = Vec::with_capacity(2 * region.len());
        for (i, &f) in first.iter().enumerate() {
            for c in f..last(i) {
                arc_ends.push((port(c, SW), port(c + 1, NW)));
                arc_ends.push((port(c, SE), port(c + 1, NE)));
            }
        }
        for i in 0..n {
            let j = (i + 1) % n;
            arc_ends.push((port(first[i], NE), port(first[j], NW)));
            arc_ends.push((port(last(i), SE), port(last(j), SW)));
        }
        let mut arc_of = vec![usize::MAX; 4 * region.len()];
        for (k, &(a, b)) in arc_ends.iter().enumerate() {
            arc_of[a] = k;
            arc_of[b] = k;
        }
        Self {
            params,
            region,
            arc_of,
            arc_ends,
        }
    }

    pub fn crossings(&self) -> usize {
        self.region.len()
    }

    pub fn arcs(&self) -> usize {
        self.arc_ends.len()
    }

    /// Twist parameter of the region holding crossing `c`.
    pub fn twist(&self, c: usize) -> i64 {
        self.params[self.region[c]]
    }

    pub(crate) fn arc(&self, c: usize, port: usize) -> usize {
        self.arc_of[4 * c + port]
    }

    /// In a positive region the NE-SW strand passes over.
    fn nesw_over(&self, c: usize) -> bool {
        self.twist(c) > 0
    }

    /// Whether the A-smoothing of crossing `c` joins NW to SW and NE to SE.
    ///
    /// The A-regions are swept by turning the over strand counterclockwise;
    /// for an over strand from SW to NE these are the top and bottom regions.
    pub(crate) fn a_smoothing_is_vertical(&self, c: usize) -> bool {
        self.nesw_over(c)
    }

    fn other_end(&self, port: usize) -> usize {
        let (a, b) = self.arc_ends[self.arc_of[port]];
        if a == port {
            b
        } else {
            a
        }
    }

    /// Walks every component once. Returns, per crossing, the ports at which
    /// the walk enters it (two per crossing), and the component count.
    fn trace(&self) -> (Vec<[(usize, usize); 2]>, usize) {
        let c = self.crossings();
        let mut entries = vec![[(usize::MAX, 0); 2]; c];
        let mut filled = vec![0usize; c];
        let mut seen = vec![false; 4 * c];
        let mut components = 0;
        for start in 0..4 * c {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut p = start;
            loop {
                let (x, q) = (p / 4, p % 4);
                let out = 4 * x + through(q);
                seen[p] = true;
                seen[out] = true;
                entries[x][filled[x]] = (q, components);
                filled[x] += 1;
                p = self.other_end(out);
                if p == start {
                    break;
                }
            }
        }
        (entries, components)
    }

    pub fn components(&self) -> usize {
        if self.crossings() == 0 {
            return 0;
        }
        self.trace().1
    }

    /// Crossing signs under the orientation found by walking the diagram.
    /// Only meaningful for knots, where the orientation is unique up to
    /// global reversal (which fixes every sign).
    pub fn traced_signs(&self) -> Vec<i32> {
        let (entries, _) = self.trace();
        entries
            .iter()
            .enumerate()
            .map(|(c, e)| {
                let (nesw, nwse) = if e[0].0 == NE || e[0].0 == SW {
                    (e[0].0, e[1].0)
                } else {
                    (e[1].0, e[0].0)
                };
                let (over, under) = if self.nesw_over(c) {
                    (travel(nesw), travel(nwse))
                } else {
                    (travel(nwse), travel(nesw))
                };
                let cross = over.0 * under.1 - over.1 * under.0;
                if cross > 0 {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }

    /// One relation per crossing of the Wirtinger presentation under the
    /// traced orientation. Arcs are numbered after merging the two edges of
    /// every over-strand; returns the arc count and the relations.
    pub fn wirtinger(&self) -> (usize, Vec<WirtingerCrossing>) {
        let (entries, _) = self.trace();
        let signs = self.traced_signs();
        let mut parent: Vec<usize> = (0..self.arcs()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let over_ports = |c: usize| if self.nesw_over(c) { (NE, SW) } else { (NW, SE) };
        for c in 0..self.crossings() {
            let (p, q) = over_ports(c);
            let (a, b) = (find(&mut parent, self.arc(c, p)), find(&mut parent, self.arc(c, q)));
            parent[a] = b;
        }
        let mut label = vec![usize::MAX; self.arcs()];
        let mut count = 0;
        for e in 0..self.arcs() {
            let r = find(&mut parent, e);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
        }
        let mut arc = |e: usize| label[find(&mut parent, e)];
        let relations = (0..self.crossings())
            .map(|c| {
                let (p, _) = over_ports(c);
                let entry = entries[c]
                    .iter()
                    .map(|&(q, _)| q)
                    .find(|&q| q != p && through(q) != p)
                    .expect("one entry lies on the under-strand");
                WirtingerCrossing {
                    over: arc(self.arc(c, p)),
                    under_in: arc(self.arc(c, entry)),
                    under_out: arc(self.arc(c, through(entry))),
                    sign: signs[c],
                }
            })
            .collect();
        (count, relations)
    }

    pub fn traced_writhe(&self) -> i64 {
        self.traced_signs().iter().map(|&s| i64::from(s)).sum()
    }

    /// Region orientations read off the traced walk.
    pub fn traced_orientations(&self) -> Vec<StrandOrientation> {
        let (entries, _) = self.trace();
        let mut out = Vec::with_capacity(self.params.len());
        let mut c = 0;
        for a in &self.params {
            let e = entries[c];
            let up = |port: usize| travel(port).1 > 0;
            out.push(if up(e[0].0) == up(e[1].0) {
                StrandOrientation::Parallel
            } else {
                StrandOrientation::Antiparallel
            });
            c += a.unsigned_abs() as usize;
        }
        out
    }
}

/// Sign of every crossing in a region with twist `a` and orientation `o`.
pub fn region_crossing_sign(a: i64, o: StrandOrientation) -> i64 {
    match o {
        StrandOrientation::Antiparallel => -a.signum(),
        StrandOrientation::Parallel => a.signum(),
    }
}

/// Writhe of the standard diagram from the orientation pattern of the
/// parity class.
pub fn pattern_writhe(p: &PretzelParams) -> Option<i64> {
    let orient = p.strand_orientations()?;
    Some(
        p.as_slice()
            .iter()
            .zip(orient)
            .map(|(&a, o)| region_crossing_sign(a, o) * a.abs())
            .sum(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pretzel::ParityClass;

    fn pp(v: &[i64]) -> PretzelParams {
        PretzelParams::new(v.to_vec()).unwrap()
    }

    #[test]
    fn component_counts() {
        assert_eq!(PretzelDiagram::new(&pp(&[1, 1, 1])).components(), 1);
        assert_eq!(PretzelDiagram::new(&pp(&[3, 3])).components(), 2);
        assert_eq!(PretzelDiagram::new(&pp(&[2, 3, 3])).components(), 1);
        assert_eq!(PretzelDiagram::new(&pp(&[2, 3, 3, 5])).components(), 1);
        assert_eq!(PretzelDiagram::new(&pp(&[2, 4, 3])).components(), 2);
        assert_eq!(PretzelDiagram::new(&pp(&[2, 4, 3])).arcs(), 18);
    }

    #[test]
    fn traced_orientation_matches_parity_pattern() {
        let vals = [-5i64, -4, -3, -2, -1, 1, 2, 3, 4, 5];
        let mut checked = 0;
        for n in 1..=4u32 {
            for idx in 0..vals.len().pow(n) {
                let mut v = Vec::new();
                let mut r = idx;
                for _ in 0..n {
                    v.push(vals[r % vals.len()]);
                    r /= vals.len();
                }
                let p = pp(&v);
                if !p.classify().is_knot() {
                    continue;
                }
                let d = PretzelDiagram::new(&p);
                assert_eq!(d.components(), 1, "{p}");
                assert_eq!(Some(d.traced_orientations()), p.strand_orientations(), "{p}");
                assert_eq!(Some(d.traced_writhe()), pattern_writhe(&p), "{p}");
                checked += 1;
            }
        }
        assert!(checked > 1000);
    }

    #[test]
    fn link_components_follow_parity() {
        for v in [[1i64, 3], [3, 3], [5, -3]] {
            let p = pp(&v);
            assert_eq!(p.classify(), ParityClass::TwoComponentAllOddEvenN);
            assert_eq!(PretzelDiagram::new(&p).components(), 2);
        }
    }
}
