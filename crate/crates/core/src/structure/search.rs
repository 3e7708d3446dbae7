//! Enumeration of closed pseudomanifolds inside a face list.

use std::collections::BTreeMap;

use crate::complex::FaceKey;

/// Calls `visit` on every nonempty subset of `faces` (all of one size ≥ 2) in
/// which each ridge lies in exactly two chosen faces, until `visit` returns
/// true or `budget` nodes have been expanded. Each subset is reported once,
/// grown from its least face.
pub(crate) fn closed_pseudomanifolds(
    faces: &[FaceKey],
    budget: &mut usize,
    visit: &mut dyn FnMut(&[FaceKey]) -> bool,
) -> bool {
    let mut containing: BTreeMap<FaceKey, Vec<usize>> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        for (_, r) in f.ridges() {
            containing.entry(r).or_default().push(i);
        }
    }
    for seed in 0..faces.len() {
        let mut chosen = vec![seed];
        let mut count: BTreeMap<FaceKey, usize> = BTreeMap::new();
        for (_, r) in faces[seed].ridges() {
            *count.entry(r).or_default() += 1;
        }
        if grow(
            faces,
            &containing,
            seed,
            &mut chosen,
            &mut count,
            budget,
            visit,
        ) {
            return true;
        }
        if *budget == 0 {
            return false;
        }
    }
    false
}

fn grow(
    faces: &[FaceKey],
    containing: &BTreeMap<FaceKey, Vec<usize>>,
    seed: usize,
    chosen: &mut Vec<usize>,
    count: &mut BTreeMap<FaceKey, usize>,
    budget: &mut usize,
    visit: &mut dyn FnMut(&[FaceKey]) -> bool,
) -> bool {
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    let open = count.iter().find(|(_, &k)| k == 1).map(|(r, _)| r.clone());
    let Some(open) = open else {
        let set: Vec<FaceKey> = {
            let mut v: Vec<usize> = chosen.clone();
            v.sort_unstable();
            v.into_iter().map(|i| faces[i].clone()).collect()
        };
        return visit(&set);
    };
    for &j in &containing[&open] {
        if j <= seed || chosen.contains(&j) {
            continue;
        }
        let ridges: Vec<FaceKey> = faces[j].ridges().map(|(_, r)| r).collect();
        if ridges
            .iter()
            .any(|r| count.get(r).copied().unwrap_or(0) >= 2)
        {
            continue;
        }
        for r in &ridges {
            *count.entry(r.clone()).or_default() += 1;
        }
        chosen.push(j);
        if grow(faces, containing, seed, chosen, count, budget, visit) {
            return true;
        }
        chosen.pop();
        for r in &ridges {
            let e = count.get_mut(r).expect("counted");
            *e -= 1;
            if *e == 0 {
                count.remove(r);
            }
        }
        if *budget == 0 {
            return false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    #[test]
    fn cycles_in_k4() {
        let edges: Vec<FaceKey> = (0..4)
            .combinations(2)
            .map(|e| FaceKey::new(e).unwrap())
            .collect();
        let mut found = Vec::new();
        let mut budget = 10_000;
        closed_pseudomanifolds(&edges, &mut budget, &mut |c| {
            found.push(c.to_vec());
            false
        });
        // Four triangles and three 4-cycles.
        assert_eq!(found.len(), 7);
        assert_eq!(found.iter().unique().count(), 7);
    }
}
