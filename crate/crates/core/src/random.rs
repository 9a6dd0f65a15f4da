//! Seeded generation of small valid partial monoids.
//!
//! Removing the zero from a monoid with zero leaves a partial monoid whose
//! product is defined exactly where the total product is nonzero. Every
//! family here is built that way, or is total, or is a small category with
//! an adjoined identity.

use std::collections::{BTreeSet, HashMap};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::monoid::PartialMonoid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// Partial transformations of a few points modulo an ideal of low rank.
    Transformation,
    /// Words over a small alphabet, bounded in length and avoiding some
    /// factors, under concatenation.
    TruncatedFree,
    /// The monogenic monoid `⟨a | a^(m+r) = a^m⟩`. Total.
    Cyclic,
    /// Arrows of a preorder on a few objects, plus a global identity.
    Category,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::Transformation,
        Family::TruncatedFree,
        Family::Cyclic,
        Family::Category,
    ];
}

#[derive(Debug, Clone)]
pub struct RandomMonoid {
    pub family: Family,
    pub monoid: PartialMonoid,
}

/// A monoid from a uniformly chosen family with carrier (identity included)
/// of at most `max_carrier`, which must be at least 2.
pub fn random_monoid<R: Rng>(rng: &mut R, max_carrier: usize) -> RandomMonoid {
    let family = *Family::ALL.choose(rng).expect("non-empty");
    random_monoid_of(rng, family, max_carrier)
}

pub fn random_monoid_of<R: Rng>(rng: &mut R, family: Family, max_carrier: usize) -> RandomMonoid {
    assert!(max_carrier >= 2, "carrier bound too small");
    loop {
        let m = match family {
            Family::Transformation => transformation(rng, max_carrier),
            Family::TruncatedFree => truncated_free(rng, max_carrier),
            Family::Cyclic => Some(cyclic(rng, max_carrier)),
            Family::Category => category(rng, max_carrier),
        };
        if let Some(monoid) = m {
            return RandomMonoid { family, monoid };
        }
    }
}

/// `count` monoids from a ChaCha stream seeded with `seed`.
pub fn random_monoids(seed: u64, count: usize, max_carrier: usize) -> Vec<RandomMonoid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_monoid(&mut rng, max_carrier))
        .collect()
}

fn build(names: Vec<String>, product: impl FnMut(usize, usize) -> Option<usize>) -> PartialMonoid {
    PartialMonoid::from_fn(names, 0, product).expect("generated names are valid")
}

const UNDEFINED: u8 = u8::MAX;

/// Images of points `0..k`, `UNDEFINED` where the map is undefined.
type PartialMap = Vec<u8>;

fn rank(f: &PartialMap) -> usize {
    f.iter()
        .filter(|&&i| i != UNDEFINED)
        .collect::<BTreeSet<_>>()
        .len()
}

/// Apply `f`, then `g`.
fn compose(f: &PartialMap, g: &PartialMap) -> PartialMap {
    f.iter()
        .map(|&i| {
            if i == UNDEFINED {
                UNDEFINED
            } else {
                g[i as usize]
            }
        })
        .collect()
}

fn transformation<R: Rng>(rng: &mut R, max_carrier: usize) -> Option<PartialMonoid> {
    let k = rng.random_range(2..=3usize);
    let gens: Vec<PartialMap> = (0..rng.random_range(1..=3))
        .map(|_| {
            (0..k)
                .map(|_| {
                    if rng.random_bool(0.25) {
                        UNDEFINED
                    } else {
                        rng.random_range(0..k as u8)
                    }
                })
                .collect()
        })
        .collect();

    let identity: PartialMap = (0..k as u8).collect();
    let mut elems = vec![identity.clone()];
    let mut index = HashMap::from([(identity, 0usize)]);
    let mut i = 0;
    while i < elems.len() {
        for g in &gens {
            let h = compose(&elems[i], g);
            if !index.contains_key(&h) {
                index.insert(h.clone(), elems.len());
                elems.push(h);
                if elems.len() > 64 {
                    return None;
                }
            }
        }
        i += 1;
    }

    // Rees quotient by the ideal of maps of rank at most `r`.
    let r = rng.random_range(0..k);
    let kept: Vec<usize> = (0..elems.len()).filter(|&i| rank(&elems[i]) > r).collect();
    if kept.len() > max_carrier {
        return None;
    }
    let pos: HashMap<usize, usize> = kept.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let names = (0..kept.len())
        .map(|p| {
            if p == 0 {
                "1".to_string()
            } else {
                format!("t{p}")
            }
        })
        .collect();
    Some(build(names, |a, b| {
        let h = compose(&elems[kept[a]], &elems[kept[b]]);
        pos.get(&index[&h]).copied()
    }))
}

fn truncated_free<R: Rng>(rng: &mut R, max_carrier: usize) -> Option<PartialMonoid> {
    let alphabet = &['a', 'b', 'c'][..rng.random_range(2..=3)];
    let max_len = rng.random_range(1..=4usize);
    let mut pairs: Vec<String> = alphabet
        .iter()
        .flat_map(|&x| alphabet.iter().map(move |&y| format!("{x}{y}")))
        .collect();
    pairs.shuffle(rng);
    let forbidden: Vec<String> = pairs.into_iter().take(rng.random_range(0..=3)).collect();
    let allowed = |w: &str| w.len() <= max_len && !forbidden.iter().any(|f| w.contains(f.as_str()));

    let mut words = vec![String::new()];
    let mut frontier = vec![String::new()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for &c in alphabet {
                let ext = format!("{w}{c}");
                if allowed(&ext) {
                    next.push(ext);
                }
            }
        }
        words.extend(next.iter().cloned());
        if words.len() > max_carrier {
            return None;
        }
        frontier = next;
    }
    let index: HashMap<&str, usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.as_str(), i))
        .collect();
    let names = words
        .iter()
        .map(|w| {
            if w.is_empty() {
                "1".to_string()
            } else {
                w.clone()
            }
        })
        .collect();
    Some(build(names, |a, b| {
        index
            .get(format!("{}{}", words[a], words[b]).as_str())
            .copied()
    }))
}

fn cyclic<R: Rng>(rng: &mut R, max_carrier: usize) -> PartialMonoid {
    let size = rng.random_range(2..=max_carrier);
    let period = rng.random_range(1..=size);
    let index = size - period;
    let names = (0..size)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "a".to_string(),
            _ => format!("a{i}"),
        })
        .collect();
    build(names, |i, j| {
        let n = i + j;
        Some(if n < size {
            n
        } else {
            index + (n - index) % period
        })
    })
}

fn category<R: Rng>(rng: &mut R, max_carrier: usize) -> Option<PartialMonoid> {
    let n = rng.random_range(1..=3usize);
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = i == j || rng.random_bool(0.4);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let mut arrows = vec![(usize::MAX, usize::MAX)];
    for (i, row) in le.iter().enumerate() {
        for (j, &cell) in row.iter().enumerate() {
            if cell {
                arrows.push((i, j));
            }
        }
    }
    if arrows.len() > max_carrier {
        return None;
    }
    let names = arrows
        .iter()
        .enumerate()
        .map(|(p, (i, j))| {
            if p == 0 {
                "1".to_string()
            } else {
                format!("f{i}{j}")
            }
        })
        .collect();
    Some(build(names, |a, b| {
        let ((i, j), (j2, k)) = (arrows[a], arrows[b]);
        (j == j2).then(|| {
            arrows
                .iter()
                .position(|&x| x == (i, k))
                .expect("transitive")
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::confluence::{is_confluent, newman_check};

    #[test]
    fn every_family_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for family in Family::ALL {
            for _ in 0..40 {
                let r = random_monoid_of(&mut rng, family, 8);
                assert!(r.monoid.len() <= 8);
                assert!(r.monoid.validate().valid, "{family:?}\n{}", r.monoid);
            }
        }
    }

    #[test]
    fn family_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            assert!(random_monoid_of(&mut rng, Family::Cyclic, 8)
                .monoid
                .is_total());
            let c = random_monoid_of(&mut rng, Family::Category, 8).monoid;
            assert!(c.is_catenary().catenary, "{c}");
        }
    }

    #[test]
    fn seeded_stream_is_reproducible() {
        let a: Vec<String> = random_monoids(3, 20, 8)
            .iter()
            .map(|r| r.monoid.to_string())
            .collect();
        let b: Vec<String> = random_monoids(3, 20, 8)
            .iter()
            .map(|r| r.monoid.to_string())
            .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn stream_has_both_verdicts() {
        let ms = random_monoids(1, 100, 8);
        assert!(ms.iter().any(|r| is_confluent(&r.monoid).confluent));
        assert!(ms.iter().any(|r| !is_confluent(&r.monoid).confluent));
        for r in &ms {
            assert_eq!(is_confluent(&r.monoid).confluent, newman_check(&r.monoid));
        }
    }
}
