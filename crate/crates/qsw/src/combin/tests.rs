use super::*;

fn mi(s: &str) -> MultiIndex {
    s.parse().unwrap()
}

/// Every partner assignment on `n` nodes that passes validation.
fn brute_patterns(n: usize) -> Vec<LinkPattern> {
    fn go(j: usize, p: &mut Vec<Option<usize>>, out: &mut Vec<LinkPattern>) {
        let n = p.len();
        if j == n {
            if let Ok(a) = LinkPattern::new(p.clone()) {
                out.push(a);
            }
            return;
        }
        if p[j].is_some() {
            return go(j + 1, p, out);
        }
        go(j + 1, p, out);
        for k in j + 1..n {
            if p[k].is_none() {
                p[j] = Some(k);
                p[k] = Some(j);
                go(j + 1, p, out);
                p[j] = None;
                p[k] = None;
            }
        }
    }
    let mut out = Vec::new();
    go(0, &mut vec![None; n], &mut out);
    out
}

fn all_multiindices(max_n: usize) -> Vec<MultiIndex> {
    fn go(rest: usize, acc: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if !acc.is_empty() {
            out.push(MultiIndex(acc.clone()));
        }
        for s in 1..=rest {
            acc.push(s as u32);
            go(rest - s, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(max_n, &mut Vec::new(), &mut out);
    out
}

#[test]
fn defect_intervals() {
    assert_eq!(defect_interval(1, 1), vec![0, 2]);
    assert_eq!(defect_interval(3, 2), vec![1, 3, 5]);
    assert_eq!(defect_interval(0, 4), vec![4]);
}

#[test]
fn walks_small() {
    assert_eq!(walks_over(&mi("1,1")), vec![Walk(vec![1, 0]), Walk(vec![1, 2])]);
    let w = walks_over(&mi("3,2,2"));
    assert_eq!(w.iter().filter(|w| w.defect() == 3).count(), 3);
    assert_eq!(walks_over(&mi("1,1,1,1")).len(), 6);
    let d = dims_d(&mi("1,1,1"));
    assert_eq!(d, BTreeMap::from([(1, 2), (3, 1)]));
    assert_eq!(dims_d(&mi("5")), BTreeMap::from([(5, 1)]));
}

#[test]
fn dimension_identity_and_counts() {
    for m in all_multiindices(8) {
        let d = dims_d(&m);
        let total: u64 = d.iter().map(|(s, c)| (*s as u64 + 1) * c).sum();
        assert_eq!(total, m.module_dim() as u64, "{m}");
        let walks = walks_over(&m);
        assert_eq!(walks.len() as u64, d.values().sum::<u64>(), "{m}");
        for (&s, &c) in &d {
            assert_eq!(walks.iter().filter(|w| w.defect() == s).count() as u64, c);
            assert_eq!(valenced_link_patterns(&m, s).len() as u64, c);
            assert_eq!(special_link_patterns(&m, s as usize).len() as u64, c);
        }
        let e = defect_set(&m);
        assert_eq!(*e.last().unwrap() as usize, m.n());
        assert!(e.windows(2).all(|w| w[1] == w[0] + 2));
        let b = dims_b(&m);
        for (s, c) in &d {
            assert!(b.get(s).copied().unwrap_or(0) >= *c, "{m} s={s}");
        }
    }
    assert_eq!(dims_b(&mi("1,1")).get(&0), Some(&1));
    assert_eq!(dims_b(&mi("4")), BTreeMap::from([(4, 1)]));
    assert_eq!(dims_d(&mi("3,2,2")).iter().map(|(s, c)| (*s as u64 + 1) * c).sum::<u64>(), 36);
}

#[test]
fn link_patterns_match_brute_force() {
    for n in 0..=8 {
        let mut brute = brute_patterns(n);
        let mut ours = all_link_patterns(n);
        assert_eq!(ours.len(), brute.len(), "n={n}");
        brute.sort();
        ours.sort();
        assert_eq!(ours, brute);
    }
    assert_eq!(link_patterns(4, 0).len(), 2);
    assert_eq!(link_patterns(6, 0).len(), 5);
    assert!(link_patterns(5, 2).is_empty());
    let two: Vec<String> = all_link_patterns(2).iter().map(|a| a.to_string()).collect();
    assert_eq!(two, vec!["()", "||"]);
}

#[test]
fn walk_round_trip() {
    for m in all_multiindices(8) {
        for w in walks_over(&m) {
            let a = pattern_of(&w, &m).unwrap();
            assert_eq!(walk_of(&a, &m).unwrap(), w);
            assert_eq!(a.s() as u32, w.defect());
        }
    }
    let nested: LinkPattern = "(())".parse().unwrap();
    assert_eq!(nested.walk(), Walk(vec![1, 2, 1, 0]));
    assert_eq!(LinkPattern::all_defects(4).walk(), Walk(vec![1, 2, 3, 4]));
}

#[test]
fn ordering() {
    let a = Walk(vec![1, 0]);
    let b = Walk(vec![1, 2]);
    assert_eq!(walk_compare(&a, &a).unwrap(), WalkOrder::Equal);
    assert_eq!(walk_compare(&a, &b).unwrap(), WalkOrder::Less);
    assert_eq!(
        walk_compare(&Walk(vec![1, 2, 1, 0]), &Walk(vec![1, 0, 1, 2])).unwrap(),
        WalkOrder::Incomparable
    );
    assert!(walk_compare(&a, &Walk(vec![1])).is_err());
}

#[test]
fn cutting() {
    let a: LinkPattern = "()|".parse().unwrap();
    assert_eq!(a.cutting_map(1).unwrap(), a);
    assert_eq!(a.cutting_map(2).unwrap().to_string(), "|()");
    let b: LinkPattern = "||".parse().unwrap();
    assert!(b.cutting_map(1).is_err());
    assert!(a.cutting_map(3).is_err());
    for n in 2..=8 {
        for a in all_link_patterns(n) {
            for j in 1..n {
                match a.cutting_map(j) {
                    Ok(c) => {
                        assert_eq!(c.partner(j - 1), Some(j));
                        assert_eq!(c.s(), a.s());
                    }
                    Err(_) => assert!(a.partner(j - 1).is_none() && a.partner(j).is_none()),
                }
            }
        }
    }
}

#[test]
fn grammar() {
    let a: LinkPattern = "(())||".parse().unwrap();
    assert_eq!(a.links(), vec![(0, 3), (1, 2)]);
    assert_eq!(a.defects(), vec![4, 5]);
    assert_eq!(a.to_string(), "(())||");
    assert!("(|)".parse::<LinkPattern>().is_err());
    assert!("(()".parse::<LinkPattern>().is_err());
    assert!("())".parse::<LinkPattern>().is_err());
    let v: ValencedLinkPattern = "walk:2,1,3@2,1,2".parse().unwrap();
    assert_eq!(v.to_string(), "walk:2,1,3@2,1,2");
    assert!("walk:3@2".parse::<ValencedLinkPattern>().is_err());
    assert!(special_link_patterns(&mi("2"), 0).is_empty());
    assert_eq!(special_link_patterns(&mi("1,1"), 0).len() + special_link_patterns(&mi("1,1"), 2).len(), 2);
    assert_eq!(mi("0").n(), 0);
    assert!(MultiIndex::new(vec![1, 0]).is_err());
}
