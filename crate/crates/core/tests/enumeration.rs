//! Cross-checks term enumeration against a brute-force generator that shares
//! no code with the library: its own term type, boundary rule and printer.

use std::collections::BTreeSet;

use globular::globular::fixtures;
use globular::Magma;

#[derive(Clone, Debug, PartialEq, Eq)]
enum B {
    Gen { name: String, dim: usize, word: Vec<u32> },
    Id { z: Box<B>, word: Vec<u32> },
    Comp { p: usize, later: Box<B>, earlier: Box<B>, word: Vec<u32> },
}

/// A cell name with its (source, target) names, absent for 0-cells.
type RawCell = (String, Option<(String, String)>);

struct Pres {
    n: usize,
    cells: Vec<Vec<RawCell>>,
}

fn q2() -> Pres {
    let c = |n: &str, b: Option<(&str, &str)>| (n.to_string(), b.map(|(s, t)| (s.to_string(), t.to_string())));
    Pres {
        n: 2,
        cells: vec![
            vec![c("A", None), c("B", None)],
            vec![c("f", Some(("A", "B"))), c("h", Some(("A", "B"))), c("g", Some(("B", "A")))],
            vec![c("u", Some(("f", "h")))],
        ],
    }
}

impl B {
    fn word(&self) -> &Vec<u32> {
        match self {
            B::Gen { word, .. } | B::Id { word, .. } | B::Comp { word, .. } => word,
        }
    }

    fn with_word(&self, w: Vec<u32>) -> B {
        let mut c = self.clone();
        match &mut c {
            B::Gen { word, .. } | B::Id { word, .. } | B::Comp { word, .. } => *word = w,
        }
        c
    }

    fn dim(&self) -> usize {
        match self {
            B::Gen { dim, .. } => *dim,
            B::Id { z, .. } => z.dim() + 1,
            B::Comp { later, .. } => later.dim(),
        }
    }

    fn boundary(&self, pres: &Pres, target: bool) -> B {
        let m = self.dim();
        let delta = self.word().iter().fold(0u32, |a, b| a ^ b);
        let target = target ^ (delta & (1 << (m - 1)) != 0);
        let bare = match self {
            B::Gen { name, dim, .. } => {
                let (_, b) = pres.cells[*dim].iter().find(|(n, _)| n == name).unwrap();
                let (s, t) = b.as_ref().unwrap();
                B::Gen { name: if target { t.clone() } else { s.clone() }, dim: dim - 1, word: vec![] }
            }
            B::Id { z, .. } => z.with_word(z.word().clone()),
            B::Comp { p, later, earlier, .. } => {
                if *p + 1 == m {
                    if target {
                        later.boundary(pres, true)
                    } else {
                        earlier.boundary(pres, false)
                    }
                } else {
                    B::Comp {
                        p: *p,
                        later: Box::new(later.boundary(pres, target)),
                        earlier: Box::new(earlier.boundary(pres, target)),
                        word: vec![],
                    }
                }
            }
        };
        let mut w = bare.word().clone();
        w.extend(self.word());
        bare.with_word(w)
    }

    fn iterated(&self, pres: &Pres, depth: usize, target: bool) -> B {
        let mut c = self.clone();
        while c.dim() > depth {
            c = c.boundary(pres, target);
        }
        c
    }

    fn print(&self) -> String {
        let base = match self {
            B::Gen { name, .. } => name.clone(),
            B::Id { z, .. } => format!("(id {})", z.print()),
            B::Comp { p, later, earlier, .. } => format!("(comp {p} {} {})", later.print(), earlier.print()),
        };
        self.word().iter().fold(base, |acc, a| {
            let set: Vec<String> = (0..32).filter(|i| a & (1 << i) != 0).map(|i| i.to_string()).collect();
            format!("(dual {{{}}} {acc})", set.join(","))
        })
    }
}

/// Every word of length exactly `len` over the indices of truncation `n`.
fn words(n: usize, len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.into_iter().flat_map(|w| (0..(1u32 << n)).map(move |a| [w.clone(), vec![a]].concat())).collect();
    }
    out
}

/// Terms of dimension `d` with exactly `k` generator leaves and exactly `w`
/// duality indices in total.
fn exact(pres: &Pres, d: usize, k: usize, w: usize) -> Vec<B> {
    let mut out = Vec::new();
    for own in 0..=w {
        let rest = w - own;
        let mut bare = Vec::new();
        if k == 1 && rest == 0 {
            for (name, _) in &pres.cells[d] {
                bare.push(B::Gen { name: name.clone(), dim: d, word: vec![] });
            }
        }
        if d >= 1 {
            for z in exact(pres, d - 1, k, rest) {
                bare.push(B::Id { z: Box::new(z), word: vec![] });
            }
        }
        for kl in 1..k {
            for wl in 0..=rest {
                let ls = exact(pres, d, kl, wl);
                let es = exact(pres, d, k - kl, rest - wl);
                for p in 0..d {
                    for l in &ls {
                        let ls_src = l.iterated(pres, p, false);
                        for e in &es {
                            if e.iterated(pres, p, true) == ls_src {
                                bare.push(B::Comp {
                                    p,
                                    later: Box::new(l.clone()),
                                    earlier: Box::new(e.clone()),
                                    word: vec![],
                                });
                            }
                        }
                    }
                }
            }
        }
        for b in bare {
            for word in words(pres.n, own) {
                out.push(b.with_word(word));
            }
        }
    }
    out
}

fn brute(pres: &Pres, d: usize, size: usize, gamma: usize) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for k in 1..=size {
        for w in 0..=gamma {
            for t in exact(pres, d, k, w) {
                out.insert(t.print());
            }
        }
    }
    out
}

#[test]
fn enumeration_matches_brute_force_on_q2() {
    let pres = q2();
    let m = Magma::new(fixtures::q2());
    for d in 0..=2 {
        for size in 1..=4 {
            for gamma in 0..=1 {
                let ours: BTreeSet<String> = m.enumerate(d, size, gamma).iter().map(|t| t.serialize()).collect();
                let expected = brute(&pres, d, size, gamma);
                assert_eq!(ours.len(), m.enumerate(d, size, gamma).len(), "duplicates at {d}/{size}/{gamma}");
                assert_eq!(ours, expected, "dimension {d}, size {size}, gamma {gamma}");
            }
        }
    }
}

#[test]
fn frozen_counts() {
    let m = Magma::new(fixtures::q2());
    assert_eq!(m.enumerate(0, 1, 0).len(), 2);
    assert_eq!(m.enumerate(1, 1, 0).len(), 5);
    assert_eq!(m.enumerate(1, 3, 0).len(), FROZEN_Q2_1_3_0);
}

// Computed once by `brute` above.
const FROZEN_Q2_1_3_0: usize = 75;

#[test]
fn brute_force_reproduces_the_frozen_count() {
    assert_eq!(brute(&q2(), 1, 3, 0).len(), FROZEN_Q2_1_3_0);
}
