//! Independent oracles shared by the property and acceptance suites.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, VecDeque};

use penrose::flagspace::{Bundle, FlagSpace};
use penrose::penrose::{transform_uncancelled, Complex, GradedInput, Transform};
use penrose::rootsys::{from_epsilon, to_epsilon, EpsilonSeq, Weight};

pub fn w(c: &[i64]) -> Weight {
    Weight::new(c.to_vec()).unwrap()
}

pub fn all_labels(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn spaces(n: usize) -> Vec<FlagSpace> {
    let mut out = vec![
        FlagSpace::f(n).unwrap(),
        FlagSpace::g(n).unwrap(),
        FlagSpace::m(n).unwrap(),
    ];
    if n >= 3 {
        out.push(FlagSpace::custom(n, [1, 3]).unwrap());
        out.push(FlagSpace::custom(n, 1..=n).unwrap());
    }
    out
}

/// Content vectors of all semistandard tableaux of `shape` with entries
/// `1..=k`, with their counts.
pub fn ssyt_contents(shape: &[usize], k: usize) -> HashMap<Vec<usize>, u64> {
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect();
    let mut grid: Vec<Vec<usize>> = shape.iter().map(|&len| vec![0; len]).collect();
    let mut out = HashMap::new();
    let mut content = vec![0usize; k];
    fn fill(
        i: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        k: usize,
        content: &mut Vec<usize>,
        out: &mut HashMap<Vec<usize>, u64>,
    ) {
        if i == cells.len() {
            *out.entry(content.clone()).or_insert(0) += 1;
            return;
        }
        let (r, c) = cells[i];
        let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
        let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
        for v in lo_row.max(lo_col)..=k {
            grid[r][c] = v;
            content[v - 1] += 1;
            fill(i + 1, cells, grid, k, content, out);
            content[v - 1] -= 1;
        }
        grid[r][c] = 0;
    }
    fill(0, &cells, &mut grid, k, &mut content, &mut out);
    out
}

pub fn ssyt_count(shape: &[usize], k: usize) -> u64 {
    ssyt_contents(shape, k).values().sum()
}

/// Weight multiset of the Levi representation with highest weight `label`,
/// from tableaux block by block.
pub fn tableau_character(space: &FlagSpace, label: &Weight) -> BTreeMap<Weight, u64> {
    let e = to_epsilon(label);
    let e = e.entries();
    let mut partial: Vec<(Vec<i64>, u64)> = vec![(vec![], 1)];
    for block in space.levi_segments().blocks() {
        let top = &e[block.clone()];
        let floor = *top.last().unwrap();
        let shape: Vec<usize> = top
            .iter()
            .map(|x| (x - floor) as usize)
            .filter(|&x| x > 0)
            .collect();
        let contents = ssyt_contents(&shape, top.len());
        let mut next = Vec::new();
        for (prefix, m) in &partial {
            for (content, cm) in &contents {
                let mut v = prefix.clone();
                v.extend(content.iter().map(|&c| floor + c as i64));
                next.push((v, m * cm));
            }
        }
        partial = next;
    }
    let mut out = BTreeMap::new();
    for (v, m) in partial {
        let wt = from_epsilon(&EpsilonSeq::normalized(v).unwrap()).unwrap();
        *out.entry(wt).or_insert(0) += m;
    }
    out
}

pub fn reflect_dynkin(x: &[i64], i: usize) -> Vec<i64> {
    let mut y = x.to_vec();
    let xi = x[i];
    y[i] -= 2 * xi;
    if i > 0 {
        y[i - 1] += xi;
    }
    if i + 1 < x.len() {
        y[i + 1] += xi;
    }
    y
}

/// `None` when singular, otherwise the degree and the resulting label.
pub fn orbit_direct_image(label: &[i64], uncrossed: &[usize]) -> Option<(usize, Vec<i64>)> {
    let start: Vec<i64> = label.iter().map(|a| a + 1).collect();
    let mut dist: HashMap<Vec<i64>, usize> = HashMap::new();
    dist.insert(start.clone(), 0);
    let mut queue = VecDeque::from([start]);
    let mut found = None;
    while let Some(x) = queue.pop_front() {
        if uncrossed.iter().any(|&i| x[i - 1] == 0) {
            return None;
        }
        if found.is_none() && uncrossed.iter().all(|&i| x[i - 1] > 0) {
            found = Some((dist[&x], x.iter().map(|a| a - 1).collect()));
        }
        for &i in uncrossed {
            let y = reflect_dynkin(&x, i - 1);
            if !dist.contains_key(&y) {
                dist.insert(y.clone(), dist[&x] + 1);
                queue.push_back(y);
            }
        }
    }
    found
}

pub fn uncrossed(space: &FlagSpace) -> Vec<usize> {
    (1..=space.n()).filter(|j| !space.is_crossed(*j)).collect()
}

pub fn corpus_inputs() -> Vec<GradedInput> {
    let f3 = FlagSpace::f(3).unwrap();
    let single = |c: &[i64]| GradedInput::single(&Bundle::new(f3.clone(), w(c)).unwrap()).unwrap();
    vec![
        GradedInput::trivial(2).unwrap(),
        GradedInput::trivial(3).unwrap(),
        single(&[2, -1, 0]),
        single(&[-1, 1, 1]),
        single(&[1, 0, 1]),
        GradedInput::tangent(2).unwrap(),
        GradedInput::tangent(3).unwrap(),
        GradedInput::extension_v().unwrap(),
    ]
}

pub fn raw_complex(input: &GradedInput) -> Complex {
    match transform_uncancelled(input).unwrap() {
        Transform::Collapsed(c) => c,
        Transform::Page { .. } => panic!("corpus inputs collapse"),
    }
}
