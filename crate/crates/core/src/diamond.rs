//! Quadratic rewriting systems on words: overlap resolution, normal forms and
//! irreducible-word counts.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact::{rat_int, Rat, Ring};

/// A word as letter ranks; ranks follow the order of the alphabet.
pub type Word = Vec<usize>;

/// Linear combination of words.
pub type Combination = BTreeMap<Word, Rat>;

#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub lead: [usize; 2],
    pub replacement: Vec<(Rat, Word)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RewriteSystem {
    /// Letter names, smallest first.
    pub alphabet: Vec<String>,
    pub rules: Vec<Rule>,
}

/// Which reducible factor a single step rewrites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Degree-lexicographic comparison of words by letter rank.
pub fn word_cmp(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn add_term(c: &mut Combination, w: Word, k: &Rat) {
    let e = c.entry(w).or_insert_with(Rat::zero);
    *e = e.add(k);
}

fn cleanup(c: &mut Combination) {
    c.retain(|_, v| !v.is_zero());
}

impl RewriteSystem {
    /// Builds a system after checking that each rule strictly decreases in the
    /// order and that leading words are distinct.
    pub fn new(alphabet: Vec<String>, rules: Vec<Rule>) -> Result<Self> {
        for (k, r) in rules.iter().enumerate() {
            if r.lead.iter().any(|&l| l >= alphabet.len()) {
                return Err(Error::CheckFailed(format!("rule {} uses a letter outside the alphabet", k + 1)));
            }
            if r.replacement.iter().any(|(_, w)| word_cmp(w, &r.lead) != std::cmp::Ordering::Less) {
                return Err(Error::CheckFailed(format!("rule {} does not decrease in the order", k + 1)));
            }
            if rules[..k].iter().any(|o| o.lead == r.lead) {
                return Err(Error::CheckFailed(format!("rule {} repeats a leading word", k + 1)));
            }
        }
        Ok(RewriteSystem { alphabet, rules })
    }

    fn rule_for(&self, a: usize, b: usize) -> Option<&Rule> {
        self.rules.iter().find(|r| r.lead == [a, b])
    }

    fn reducible_at(&self, w: &[usize], strategy: Strategy) -> Option<(usize, &Rule)> {
        let mut positions: Box<dyn Iterator<Item = usize>> = match strategy {
            Strategy::Leftmost => Box::new(0..w.len().saturating_sub(1)),
            Strategy::Rightmost => Box::new((0..w.len().saturating_sub(1)).rev()),
        };
        positions.find_map(|i| self.rule_for(w[i], w[i + 1]).map(|r| (i, r)))
    }

    pub fn is_irreducible(&self, w: &[usize]) -> bool {
        self.reducible_at(w, Strategy::Leftmost).is_none()
    }

    /// Normal form of a combination. Each step rewrites the largest reducible word
    /// at the position chosen by `strategy`.
    pub fn normal_form_with(&self, c: &Combination, strategy: Strategy, budget: usize) -> Result<Combination> {
        let mut cur = c.clone();
        cleanup(&mut cur);
        for _ in 0..budget {
            let target = cur
                .iter()
                .rev()
                .find_map(|(w, k)| self.reducible_at(w, strategy).map(|(i, r)| (w.clone(), k.clone(), i, r.clone())));
            let Some((w, k, i, rule)) = target else {
                return Ok(cur);
            };
            cur.remove(&w);
            for (c, rep) in &rule.replacement {
                let mut nw = w[..i].to_vec();
                nw.extend_from_slice(rep);
                nw.extend_from_slice(&w[i + 2..]);
                add_term(&mut cur, nw, &k.mul(c));
            }
            cleanup(&mut cur);
        }
        Err(Error::NonTerminating(budget))
    }

    pub fn normal_form(&self, c: &Combination) -> Result<Combination> {
        self.normal_form_with(c, Strategy::Leftmost, DEFAULT_BUDGET)
    }

    pub fn word_normal_form(&self, w: &[usize]) -> Result<Combination> {
        self.normal_form(&single(w))
    }

    /// All overlap words abc with ab and bc leading words.
    pub fn overlaps(&self) -> Vec<Word> {
        let mut out = Vec::new();
        for r in &self.rules {
            for s in &self.rules {
                if r.lead[1] == s.lead[0] {
                    out.push(vec![r.lead[0], r.lead[1], s.lead[1]]);
                }
            }
        }
        out.sort();
        out
    }

    /// Reduces each overlap by first rewriting its left or its right factor and
    /// compares the normal forms.
    pub fn resolve_overlaps(&self) -> Result<Vec<Word>> {
        let overlaps = self.overlaps();
        for w in &overlaps {
            let left = self.rule_for(w[0], w[1]).expect("overlap has a left rule");
            let right = self.rule_for(w[1], w[2]).expect("overlap has a right rule");
            let mut via_left = Combination::new();
            for (c, rep) in &left.replacement {
                let mut nw = rep.clone();
                nw.push(w[2]);
                add_term(&mut via_left, nw, c);
            }
            let mut via_right = Combination::new();
            for (c, rep) in &right.replacement {
                let mut nw = vec![w[0]];
                nw.extend_from_slice(rep);
                add_term(&mut via_right, nw, c);
            }
            let a = self.normal_form(&via_left)?;
            let b = self.normal_form(&via_right)?;
            if a != b {
                let mut diff = a.clone();
                for (k, v) in &b {
                    add_term(&mut diff, k.clone(), &v.neg());
                }
                cleanup(&mut diff);
                return Err(Error::UnresolvableOverlap { word: self.render_word(w), difference: self.render(&diff) });
            }
        }
        Ok(overlaps)
    }

    /// Number of irreducible words of length n.
    pub fn irreducible_count(&self, n: usize) -> u64 {
        if n == 0 {
            return 1;
        }
        let k = self.alphabet.len();
        let mut ends = vec![1u64; k];
        for _ in 1..n {
            let mut next = vec![0u64; k];
            for (b, slot) in next.iter_mut().enumerate() {
                *slot = (0..k).filter(|&a| self.rule_for(a, b).is_none()).map(|a| ends[a]).sum();
            }
            ends = next;
        }
        ends.iter().sum()
    }

    /// Irreducible words of length n, in increasing order.
    pub fn irreducible_words(&self, n: usize) -> Vec<Word> {
        let mut words: Vec<Word> = vec![Vec::new()];
        for _ in 0..n {
            words = words
                .iter()
                .flat_map(|w| {
                    (0..self.alphabet.len()).filter_map(move |b| match w.last() {
                        Some(&a) if self.rule_for(a, b).is_some() => None,
                        _ => {
                            let mut nw = w.clone();
                            nw.push(b);
                            Some(nw)
                        }
                    })
                })
                .collect();
        }
        words.sort_by(|a, b| word_cmp(a, b));
        words
    }

    pub fn render_word(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&l| self.alphabet[l].as_str()).collect::<Vec<_>>().join("")
    }

    pub fn render(&self, c: &Combination) -> String {
        if c.is_empty() {
            return "0".into();
        }
        c.iter().rev().map(|(w, k)| format!("({}){}", k, self.render_word(w))).collect::<Vec<_>>().join(" + ")
    }

    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let mut out = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let (k, name) = self
                .alphabet
                .iter()
                .enumerate()
                .filter(|(_, a)| rest.starts_with(a.as_str()))
                .max_by_key(|(_, a)| a.len())
                .ok_or_else(|| Error::Parse(format!("unknown letter at {:?}", rest)))?;
            out.push(k);
            rest = &rest[name.len()..];
        }
        Ok(out)
    }
}

pub const DEFAULT_BUDGET: usize = 1_000_000;

pub fn single(w: &[usize]) -> Combination {
    let mut c = Combination::new();
    c.insert(w.to_vec(), rat_int(1));
    c
}

/// Letter ranks of the degree-one generators t, ut, vt, uvt in the order
/// ut < t < vt < uvt.
pub const X1: usize = 1;
pub const X2: usize = 0;
pub const X3: usize = 2;
pub const X4: usize = 3;

/// The binomial system at the degenerate parameter value.
pub fn a_system() -> RewriteSystem {
    let alphabet = ["x2", "x1", "x3", "x4"].iter().map(|s| s.to_string()).collect();
    let rule = |a: usize, b: usize, c: usize, d: usize| Rule { lead: [a, b], replacement: vec![(rat_int(1), vec![c, d])] };
    let rules = vec![
        rule(X3, X1, X1, X3),
        rule(X3, X2, X1, X4),
        rule(X4, X1, X2, X3),
        rule(X4, X2, X2, X4),
        rule(X1, X2, X2, X3),
        rule(X4, X3, X1, X4),
    ];
    RewriteSystem::new(alphabet, rules).expect("the binomial system is order-compatible")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy(rules: Vec<Rule>) -> RewriteSystem {
        RewriteSystem::new(vec!["x".into(), "y".into()], rules).unwrap()
    }

    #[test]
    fn a_system_is_confluent() {
        let s = a_system();
        let overlaps = s.resolve_overlaps().unwrap();
        assert!(!overlaps.is_empty());
    }

    #[test]
    fn toy_systems() {
        let s = toy(vec![Rule { lead: [0, 1], replacement: vec![] }]);
        assert!(s.overlaps().is_empty());
        assert!(s.resolve_overlaps().is_ok());
        let s = toy(vec![
            Rule { lead: [1, 0], replacement: vec![(rat_int(1), vec![0, 1])] },
            Rule { lead: [0, 1], replacement: vec![] },
        ]);
        assert!(s.overlaps().contains(&vec![1, 0, 1]));
        assert!(s.resolve_overlaps().is_ok());
    }

    #[test]
    fn non_confluent_toy_is_reported() {
        // zy -> xx, yx -> xy: the overlap zyx reduces to xxx and to zxy
        let s = RewriteSystem::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![
                Rule { lead: [2, 1], replacement: vec![(rat_int(1), vec![0, 0])] },
                Rule { lead: [1, 0], replacement: vec![(rat_int(1), vec![0, 1])] },
            ],
        )
        .unwrap();
        assert!(matches!(s.resolve_overlaps(), Err(Error::UnresolvableOverlap { .. })));
    }

    #[test]
    fn rejects_increasing_rule() {
        let r = RewriteSystem::new(vec!["x".into(), "y".into()], vec![Rule { lead: [0, 1], replacement: vec![(rat_int(1), vec![1, 0])] }]);
        assert!(r.is_err());
    }

    #[test]
    fn counts() {
        let s = a_system();
        assert_eq!(s.irreducible_count(0), 1);
        assert_eq!(s.irreducible_count(2), 10);
        assert_eq!(s.irreducible_count(5), 56);
        assert_eq!(s.irreducible_words(3).len() as u64, s.irreducible_count(3));
    }

    #[test]
    fn normal_forms() {
        let s = a_system();
        let nf = s.word_normal_form(&[X3, X1]).unwrap();
        assert_eq!(nf, single(&[X1, X3]));
        let nf = s.word_normal_form(&[X4, X3, X1]).unwrap();
        assert_eq!(nf, single(&[X2, X3, X3]));
        assert_eq!(s.word_normal_form(&[X2, X1, X3, X4]).unwrap(), single(&[X2, X1, X3, X4]));
        assert_eq!(s.parse_word("x4x3x1").unwrap(), vec![X4, X3, X1]);
    }

    #[test]
    fn strategies_agree() {
        let s = a_system();
        for w in [vec![X4, X4, X3, X2, X1], vec![X3, X4, X1, X2, X3, X1]] {
            let a = s.normal_form_with(&single(&w), Strategy::Leftmost, DEFAULT_BUDGET).unwrap();
            let b = s.normal_form_with(&single(&w), Strategy::Rightmost, DEFAULT_BUDGET).unwrap();
            assert_eq!(a, b);
        }
    }
}
