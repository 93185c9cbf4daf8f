use super::{GResult, GroupError};
use crate::algebra::{mat_identity, mat_mul, Mat};
use crate::fields::{Field, FieldError};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::{HashMap, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupType {
    B,
    C,
    G2,
}

impl GroupType {
    /// "B2", "C3", "G2" → (type, rank).
    pub fn parse(s: &str) -> Option<(GroupType, usize)> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("G2") {
            return Some((GroupType::G2, 2));
        }
        let (head, tail) = s.split_at(1.min(s.len()));
        let n: usize = tail.parse().ok()?;
        match head {
            "B" | "b" => Some((GroupType::B, n)),
            "C" | "c" => Some((GroupType::C, n)),
            _ => None,
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            GroupType::B | GroupType::C => 2,
            GroupType::G2 => 3,
        }
    }

    pub fn label(self, rank: usize) -> String {
        match self {
            GroupType::B => format!("B{rank}"),
            GroupType::C => format!("C{rank}"),
            GroupType::G2 => "G2".into(),
        }
    }
}

/// x_r(t) = I + Σ coeff·t^power·E_ij over `terms`; `lin` is the linear term
/// used to read the parameter back off a unipotent matrix.
#[derive(Clone, Debug)]
pub struct Root {
    pub name: String,
    /// Character exponents on the torus coordinates.
    pub vec: Vec<i32>,
    pub long: bool,
    pub height: i32,
    pub terms: Vec<(usize, usize, i64, u32)>,
    pub lin: (usize, usize, i64),
    pub neg: usize,
}

#[derive(Clone, Debug)]
pub struct WeylElem<E> {
    pub word: Vec<usize>,
    /// n_w e_j is a multiple of e_{perm[j]}.
    pub perm: Vec<usize>,
    pub rep: Mat<E>,
}

/// A split Chevalley group in an explicit matrix realization whose Borel
/// subgroup is upper triangular and whose maximal torus is diagonal.
#[derive(Clone, Debug)]
pub struct GroupSpec<F: Field> {
    pub kind: GroupType,
    pub rank: usize,
    pub field: F,
    pub dim: usize,
    pub roots: Vec<Root>,
    /// Positive roots by height.
    pub positive: Vec<usize>,
    pub simple: Vec<usize>,
    /// Torus character of each basis vector.
    pub weights: Vec<Vec<i32>>,
    /// Basis vector whose weight is the j-th coordinate character.
    pub coord_index: Vec<usize>,
    pub weyl: Vec<WeylElem<F::Elem>>,
    weyl_by_perm: HashMap<Vec<usize>, usize>,
    /// Gram matrix: the quadratic form (B), the alternating form (C) or the
    /// invariant symmetric form (G₂).
    pub gram: Mat<F::Elem>,
    /// Structure constants of the G₂-invariant cross product, doubled.
    cross: Vec<(usize, usize, usize, i64)>,
    torus_adj: Vec<Vec<i64>>,
    torus_det: i64,
}

// Root elements of G₂ on the trace-zero split octonions, basis ordered by
// weight. Entries are (row, col, coeff, power) with the t² terms from X²/2.
const G2_ROOTS: [(&str, [i32; 2], bool, &[(usize, usize, i64, u32)]); 12] = [
    ("a", [0, 1], false, &[(0, 1, 1, 1), (2, 3, -2, 1), (3, 4, 1, 1), (5, 6, -1, 1), (2, 4, -1, 2)]),
    ("-a", [0, -1], false, &[(1, 0, 1, 1), (3, 2, -1, 1), (4, 3, 2, 1), (6, 5, -1, 1), (4, 2, -1, 2)]),
    ("b", [1, -1], true, &[(1, 2, 1, 1), (4, 5, -1, 1)]),
    ("-b", [-1, 1], true, &[(2, 1, 1, 1), (5, 4, -1, 1)]),
    ("a+b", [1, 0], false, &[(0, 2, 1, 1), (1, 3, 2, 1), (3, 5, -1, 1), (4, 6, -1, 1), (1, 5, -1, 2)]),
    ("-a-b", [-1, 0], false, &[(2, 0, 1, 1), (3, 1, 1, 1), (5, 3, -2, 1), (6, 4, -1, 1), (5, 1, -1, 2)]),
    ("2a+b", [1, 1], false, &[(0, 3, 2, 1), (1, 4, -1, 1), (2, 5, 1, 1), (3, 6, -1, 1), (0, 6, -1, 2)]),
    ("-2a-b", [-1, -1], false, &[(3, 0, 1, 1), (4, 1, -1, 1), (5, 2, 1, 1), (6, 3, -2, 1), (6, 0, -1, 2)]),
    ("3a+b", [1, 2], true, &[(0, 4, -1, 1), (2, 6, 1, 1)]),
    ("-3a-b", [-1, -2], true, &[(4, 0, -1, 1), (6, 2, 1, 1)]),
    ("3a+2b", [2, 1], true, &[(0, 5, -1, 1), (1, 6, 1, 1)]),
    ("-3a-2b", [-2, -1], true, &[(5, 0, -1, 1), (6, 1, 1, 1)]),
];

const G2_WEIGHTS: [[i32; 2]; 7] = [[1, 1], [1, 0], [0, 1], [0, 0], [0, -1], [-1, 0], [-1, -1]];

const G2_CROSS: [(usize, usize, usize, i64); 30] = [
    (0, 3, 0, 2), (0, 4, 1, 2), (0, 5, 2, -2), (0, 6, 3, -1), (1, 2, 0, 2), (1, 3, 1, -2),
    (1, 5, 3, 1), (1, 6, 4, -2), (2, 1, 0, -2), (2, 3, 2, -2), (2, 4, 3, 1), (2, 6, 5, 2),
    (3, 0, 0, -2), (3, 1, 1, 2), (3, 2, 2, 2), (3, 4, 4, -2), (3, 5, 5, -2), (3, 6, 6, 2),
    (4, 0, 1, -2), (4, 2, 3, -1), (4, 3, 4, 2), (4, 5, 6, 2), (5, 0, 2, 2), (5, 1, 3, -1),
    (5, 3, 5, 2), (5, 4, 6, -2), (6, 0, 3, 1), (6, 1, 4, 2), (6, 2, 5, -2), (6, 3, 6, -2),
];

fn unit(n: usize, i: usize, s: i32) -> Vec<i32> {
    let mut v = vec![0; n];
    v[i] = s;
    v
}

fn add_vec(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

type RawRoot = (String, Vec<i32>, bool, Vec<(usize, usize, i64, u32)>);

fn b_roots(n: usize) -> Vec<RawRoot> {
    let e = |i: usize| i;
    let e0 = n;
    let ep = |i: usize| 2 * n - i;
    let mut out = vec![];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let v = add_vec(&unit(n, i, 1), &unit(n, j, -1));
                out.push((format!("e{}-e{}", i + 1, j + 1), v, true, vec![(e(i), e(j), 1, 1), (ep(j), ep(i), -1, 1)]));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let v = add_vec(&unit(n, i, 1), &unit(n, j, 1));
            out.push((format!("e{}+e{}", i + 1, j + 1), v.clone(), true, vec![(e(i), ep(j), 1, 1), (e(j), ep(i), -1, 1)]));
            let w: Vec<i32> = v.iter().map(|x| -x).collect();
            out.push((format!("-e{}-e{}", i + 1, j + 1), w, true, vec![(ep(i), e(j), 1, 1), (ep(j), e(i), -1, 1)]));
        }
    }
    for i in 0..n {
        out.push((format!("e{}", i + 1), unit(n, i, 1), false, vec![(e0, ep(i), 1, 1), (e(i), ep(i), -1, 2), (e(i), e0, -2, 1)]));
        out.push((format!("-e{}", i + 1), unit(n, i, -1), false, vec![(e0, e(i), 1, 1), (ep(i), e(i), -1, 2), (ep(i), e0, -2, 1)]));
    }
    out
}

fn c_roots(n: usize) -> Vec<RawRoot> {
    let e = |i: usize| i;
    let ep = |i: usize| 2 * n - 1 - i;
    let mut out = vec![];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let v = add_vec(&unit(n, i, 1), &unit(n, j, -1));
                out.push((format!("e{}-e{}", i + 1, j + 1), v, false, vec![(e(i), e(j), 1, 1), (ep(j), ep(i), -1, 1)]));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let v = add_vec(&unit(n, i, 1), &unit(n, j, 1));
            out.push((format!("e{}+e{}", i + 1, j + 1), v.clone(), false, vec![(e(i), ep(j), 1, 1), (e(j), ep(i), 1, 1)]));
            let w: Vec<i32> = v.iter().map(|x| -x).collect();
            out.push((format!("-e{}-e{}", i + 1, j + 1), w, false, vec![(ep(j), e(i), 1, 1), (ep(i), e(j), 1, 1)]));
        }
    }
    for i in 0..n {
        out.push((format!("2e{}", i + 1), unit(n, i, 2), true, vec![(e(i), ep(i), 1, 1)]));
        out.push((format!("-2e{}", i + 1), unit(n, i, -2), true, vec![(ep(i), e(i), 1, 1)]));
    }
    out
}

fn int_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * m[0][j] * int_det(&minor)
        })
        .sum()
}

/// adj[j][i] = (-1)^{i+j} det(minor_ij).
fn int_adjugate(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = m.len();
    let mut adj = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = m
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[j][i] = s * int_det(&minor);
        }
    }
    adj
}

/// x^e for a signed exponent; `None` for 0^{negative}.
pub fn pow_signed<F: Field>(f: &F, x: &F::Elem, e: i64) -> Option<F::Elem> {
    if e >= 0 {
        Some(f.pow(x, e as u64))
    } else {
        f.inv(x).map(|y| f.pow(&y, e.unsigned_abs()))
    }
}

impl<F: Field> GroupSpec<F> {
    /// Builds the realization; B_n and C_n need characteristic 2, G₂ needs 3.
    pub fn new(kind: GroupType, rank: usize, field: F) -> GResult<Self> {
        let p = field.characteristic();
        if p != kind.characteristic() {
            return Err(FieldError::WrongCharacteristic { expected: kind.characteristic(), found: p }.into());
        }
        let (raw, dim, weights, coord_index, posfun): (Vec<RawRoot>, usize, Vec<Vec<i32>>, Vec<usize>, Vec<i32>) = match kind {
            GroupType::B | GroupType::C => {
                if rank < 2 {
                    return Err(GroupError::UnsupportedType(format!("{} needs rank at least 2", kind.label(rank))));
                }
                let n = rank;
                let b = kind == GroupType::B;
                let dim = if b { 2 * n + 1 } else { 2 * n };
                let mut w = vec![vec![0; n]; dim];
                for i in 0..n {
                    w[i] = unit(n, i, 1);
                    w[dim - 1 - i] = unit(n, i, -1);
                }
                let raw = if b { b_roots(n) } else { c_roots(n) };
                (raw, dim, w, (0..n).collect(), (0..n).map(|i| (n - i) as i32).collect())
            }
            GroupType::G2 => {
                if rank != 2 {
                    return Err(GroupError::UnsupportedType(format!("G2 has rank 2, not {rank}")));
                }
                let raw = G2_ROOTS.iter().map(|(n, v, l, t)| (n.to_string(), v.to_vec(), *l, t.to_vec())).collect();
                (raw, 7, G2_WEIGHTS.iter().map(|w| w.to_vec()).collect(), vec![1, 2], vec![3, 1])
            }
        };
        let f = &field;
        let mut roots: Vec<Root> = raw
            .into_iter()
            .map(|(name, vec, long, terms)| {
                let terms: Vec<_> = terms.into_iter().filter(|t| !f.is_zero(&f.from_i64(t.2))).collect();
                let l = terms.iter().find(|t| t.3 == 1).expect("root element has a linear term");
                Root { name, vec, long, height: 0, lin: (l.0, l.1, l.2), terms, neg: 0 }
            })
            .collect();
        for i in 0..roots.len() {
            let target: Vec<i32> = roots[i].vec.iter().map(|x| -x).collect();
            roots[i].neg = roots.iter().position(|r| r.vec == target).expect("root system is symmetric");
        }
        let pf = |v: &[i32]| v.iter().zip(&posfun).map(|(a, b)| a * b).sum::<i32>();
        let pos: Vec<usize> = (0..roots.len()).filter(|&i| pf(&roots[i].vec) > 0).collect();
        let by_vec: HashMap<Vec<i32>, usize> = roots.iter().enumerate().map(|(i, r)| (r.vec.clone(), i)).collect();
        let find = |v: &[i32]| by_vec.get(v).copied();
        let simple: Vec<usize> = pos
            .iter()
            .copied()
            .filter(|&r| !pos.iter().any(|&a| pos.iter().any(|&b| add_vec(&roots[a].vec, &roots[b].vec) == roots[r].vec)))
            .collect();
        let mut simple = simple;
        simple.sort_by_key(|&r| roots[r].vec.iter().position(|&x| x != 0));
        if simple.len() != rank {
            return Err(GroupError::InvariantFailure(format!("found {} simple roots for rank {rank}", simple.len())));
        }
        for &s in &simple {
            roots[s].height = 1;
            let n = roots[s].neg;
            roots[n].height = -1;
        }
        loop {
            let mut changed = false;
            for &r in &pos {
                if roots[r].height != 0 {
                    continue;
                }
                for &s in &simple {
                    let d: Vec<i32> = roots[r].vec.iter().zip(&roots[s].vec).map(|(a, b)| a - b).collect();
                    if let Some(q) = find(&d) {
                        if roots[q].height > 0 {
                            let h = roots[q].height + 1;
                            roots[r].height = h;
                            let n = roots[r].neg;
                            roots[n].height = -h;
                            changed = true;
                            break;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut positive = pos;
        positive.sort_by_key(|&r| (roots[r].height, r));

        let mut gram = Mat { rows: dim, cols: dim, data: vec![f.zero(); dim * dim] };
        let mut cross = vec![];
        match kind {
            GroupType::B => {
                gram.set(rank, rank, f.one());
                for i in 0..rank {
                    gram.set(i, dim - 1 - i, f.one());
                }
            }
            GroupType::C => {
                for i in 0..rank {
                    gram.set(i, dim - 1 - i, f.one());
                    gram.set(dim - 1 - i, i, f.neg(&f.one()));
                }
            }
            GroupType::G2 => {
                for i in 0..7 {
                    gram.set(i, 6 - i, f.one());
                }
                gram.set(3, 3, f.from_i64(2));
                cross = G2_CROSS.to_vec();
            }
        }
        let smat: Vec<Vec<i64>> = simple.iter().map(|&s| roots[s].vec.iter().map(|&x| x as i64).collect()).collect();
        let mut spec = GroupSpec {
            kind,
            rank,
            field,
            dim,
            roots,
            positive,
            simple,
            weights,
            coord_index,
            weyl: vec![],
            weyl_by_perm: HashMap::new(),
            gram,
            cross,
            torus_det: int_det(&smat),
            torus_adj: int_adjugate(&smat),
        };
        spec.build_weyl()?;
        Ok(spec)
    }

    pub fn label(&self) -> String {
        self.kind.label(self.rank)
    }

    pub fn nroots(&self) -> usize {
        self.roots.len()
    }

    pub fn root_index(&self, name: &str) -> Option<usize> {
        self.roots.iter().position(|r| r.name == name)
    }

    pub fn identity(&self) -> Mat<F::Elem> {
        mat_identity(&self.field, self.dim)
    }

    pub fn root_element(&self, r: usize, c: &F::Elem) -> Mat<F::Elem> {
        let f = &self.field;
        let mut m = self.identity();
        for &(i, j, k, e) in &self.roots[r].terms {
            let v = f.add(m.get(i, j), &f.mul(&f.from_i64(k), &f.pow(c, e as u64)));
            m.set(i, j, v);
        }
        m
    }

    /// x_r(c)·m, touching only the rows of the root's terms.
    pub fn root_mul_left(&self, r: usize, c: &F::Elem, m: &Mat<F::Elem>) -> Mat<F::Elem> {
        let f = &self.field;
        let mut out = m.clone();
        for &(i, j, k, e) in &self.roots[r].terms {
            let a = f.mul(&f.from_i64(k), &f.pow(c, e as u64));
            if f.is_zero(&a) {
                continue;
            }
            for col in 0..m.cols {
                let x = m.get(j, col);
                if !f.is_zero(x) {
                    let v = f.add(out.get(i, col), &f.mul(&a, x));
                    out.set(i, col, v);
                }
            }
        }
        out
    }

    /// m·x_r(c).
    pub fn root_mul_right(&self, m: &Mat<F::Elem>, r: usize, c: &F::Elem) -> Mat<F::Elem> {
        let f = &self.field;
        let mut out = m.clone();
        for &(i, j, k, e) in &self.roots[r].terms {
            let a = f.mul(&f.from_i64(k), &f.pow(c, e as u64));
            if f.is_zero(&a) {
                continue;
            }
            for row in 0..m.rows {
                let x = m.get(row, i);
                if !f.is_zero(x) {
                    let v = f.add(out.get(row, j), &f.mul(x, &a));
                    out.set(row, j, v);
                }
            }
        }
        out
    }

    /// n_α = x_α(1)·x_{-α}(-1)·x_α(1) for the i-th simple root.
    pub fn simple_reflection(&self, i: usize) -> Mat<F::Elem> {
        let f = &self.field;
        let a = self.simple[i];
        let one = f.one();
        let m = self.root_element(a, &one);
        let m = self.root_mul_right(&m, self.roots[a].neg, &f.neg(&one));
        self.root_mul_right(&m, a, &one)
    }

    fn build_weyl(&mut self) -> GResult<()> {
        let gens: Vec<Mat<F::Elem>> = (0..self.rank).map(|i| self.simple_reflection(i)).collect();
        let id = self.identity();
        let mut elems = vec![WeylElem { word: vec![], perm: self.monomial_perm(&id).unwrap(), rep: id }];
        let mut index = HashMap::new();
        index.insert(elems[0].perm.clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(k) = queue.pop_front() {
            for (i, g) in gens.iter().enumerate() {
                let rep = mat_mul(&self.field, &elems[k].rep, g);
                let perm = self.monomial_perm(&rep).ok_or_else(|| GroupError::InvariantFailure("Weyl representative is not monomial".into()))?;
                if index.contains_key(&perm) {
                    continue;
                }
                if elems.len() > 1_000_000 {
                    return Err(GroupError::EnumerationBound { cap: 1_000_000 });
                }
                let mut word = elems[k].word.clone();
                word.push(i);
                index.insert(perm.clone(), elems.len());
                queue.push_back(elems.len());
                elems.push(WeylElem { word, perm, rep });
            }
        }
        self.weyl = elems;
        self.weyl_by_perm = index;
        Ok(())
    }

    /// perm[j] = the row of the unique nonzero entry in column j.
    pub fn monomial_perm(&self, m: &Mat<F::Elem>) -> Option<Vec<usize>> {
        let f = &self.field;
        let mut perm = Vec::with_capacity(m.cols);
        for j in 0..m.cols {
            let rows: Vec<usize> = (0..m.rows).filter(|&i| !f.is_zero(m.get(i, j))).collect();
            if rows.len() != 1 {
                return None;
            }
            perm.push(rows[0]);
        }
        Some(perm)
    }

    pub fn weyl_index(&self, perm: &[usize]) -> Option<usize> {
        self.weyl_by_perm.get(perm).copied()
    }

    /// Index of the Weyl element whose reduced word is `word`.
    pub fn weyl_of_word(&self, word: &[usize]) -> Option<usize> {
        let m = self.word_matrix(word);
        self.monomial_perm(&m).and_then(|p| self.weyl_index(&p))
    }

    /// Product of the simple reflections along `word`.
    pub fn word_matrix(&self, word: &[usize]) -> Mat<F::Elem> {
        let f = &self.field;
        word.iter().fold(self.identity(), |acc, &i| mat_mul(f, &acc, &self.simple_reflection(i)))
    }

    /// Roots r > 0 sent to negative roots by the Weyl element `w`.
    pub fn inversion_set(&self, w: usize) -> Vec<usize> {
        let perm = &self.weyl[w].perm;
        self.positive.iter().copied().filter(|&r| perm[self.roots[r].lin.0] > perm[self.roots[r].lin.1]).collect()
    }

    pub fn longest_element(&self) -> usize {
        (0..self.weyl.len()).max_by_key(|&w| self.weyl[w].word.len()).unwrap()
    }

    pub fn torus(&self, coords: &[F::Elem]) -> GResult<Mat<F::Elem>> {
        let f = &self.field;
        if coords.len() != self.rank || coords.iter().any(|c| f.is_zero(c)) {
            return Err(GroupError::NotInGroup("torus coordinates must be units".into()));
        }
        let mut m = self.identity();
        for (i, w) in self.weights.iter().enumerate() {
            let v = w.iter().zip(coords).fold(f.one(), |acc, (&e, c)| f.mul(&acc, &pow_signed(f, c, e as i64).unwrap()));
            m.set(i, i, v);
        }
        Ok(m)
    }

    /// r(t) for the torus element with the given coordinates.
    pub fn root_value(&self, r: usize, coords: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        self.roots[r].vec.iter().zip(coords).fold(f.one(), |acc, (&e, c)| f.mul(&acc, &pow_signed(f, c, e as i64).expect("unit")))
    }

    pub fn simple_values(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        self.simple.iter().map(|&s| self.root_value(s, coords)).collect()
    }

    /// Torus coordinates with prescribed simple-root values. Types with a
    /// non-unimodular simple-root matrix (C_n) need a square root.
    pub fn torus_from_values(&self, values: &[F::Elem]) -> GResult<Vec<F::Elem>> {
        let f = &self.field;
        let d = self.torus_det;
        let mut out = vec![];
        for j in 0..self.rank {
            let mut w = f.one();
            for (i, v) in values.iter().enumerate() {
                let e = self.torus_adj[j][i] * d.signum();
                let x = pow_signed(f, v, e).ok_or_else(|| GroupError::NotInGroup("zero torus value".into()))?;
                w = f.mul(&w, &x);
            }
            let c = match d.abs() {
                1 => w,
                2 => f.sqrt(&w)?.ok_or_else(|| GroupError::NotInGroup("simple-root values outside the torus image".into()))?,
                _ => return Err(GroupError::UnsupportedType(format!("simple-root determinant {d}"))),
            };
            out.push(c);
        }
        Ok(out)
    }

    /// Reads torus coordinates off a diagonal matrix.
    pub fn torus_coords(&self, t: &Mat<F::Elem>) -> Vec<F::Elem> {
        self.coord_index.iter().map(|&i| t.get(i, i).clone()).collect()
    }

    pub fn preserves_form(&self, m: &Mat<F::Elem>) -> bool {
        let f = &self.field;
        if m.rows != self.dim || m.cols != self.dim {
            return false;
        }
        let g = &self.gram;
        match self.kind {
            GroupType::B => {
                let gt = g.transpose();
                let polar = Mat { rows: g.rows, cols: g.cols, data: g.data.iter().zip(&gt.data).map(|(a, b)| f.add(a, b)).collect() };
                if congruent(f, m, &polar) != polar {
                    return false;
                }
                (0..self.dim).all(|j| {
                    let col: Vec<F::Elem> = (0..self.dim).map(|i| m.get(i, j).clone()).collect();
                    quad(f, g, &col) == *g.get(j, j)
                })
            }
            GroupType::C => congruent(f, m, g) == *g,
            GroupType::G2 => congruent(f, m, g) == *g && self.preserves_cross(m),
        }
    }

    fn preserves_cross(&self, m: &Mat<F::Elem>) -> bool {
        let f = &self.field;
        let n = self.dim;
        let mut table = vec![vec![vec![f.zero(); n]; n]; n];
        for &(i, j, k, c) in &self.cross {
            table[i][j][k] = f.from_i64(c);
        }
        for i in 0..n {
            for j in 0..n {
                // M(e_i × e_j) against M e_i × M e_j
                let lhs: Vec<F::Elem> = (0..n).map(|r| (0..n).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(m.get(r, k), &table[i][j][k])))).collect();
                let mut rhs = vec![f.zero(); n];
                for &(a, b, k, c) in &self.cross {
                    let x = f.mul(&f.mul(m.get(a, i), m.get(b, j)), &f.from_i64(c));
                    if !f.is_zero(&x) {
                        rhs[k] = f.add(&rhs[k], &x);
                    }
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Random parameter, zero with small probability.
    pub fn sample_param(&self, rng: &mut ChaCha8Rng) -> F::Elem {
        if rng.gen_bool(0.05) {
            self.field.zero()
        } else {
            self.field.sample(rng)
        }
    }

    pub fn sample_unit(&self, rng: &mut ChaCha8Rng) -> F::Elem {
        loop {
            let x = self.field.sample(rng);
            if !self.field.is_zero(&x) {
                return x;
            }
        }
    }

    /// A product of `len` random root elements and one random torus element.
    pub fn random_element(&self, rng: &mut ChaCha8Rng, len: usize) -> Mat<F::Elem> {
        let mut m = self.identity();
        let tpos = rng.gen_range(0..=len);
        for k in 0..=len {
            if k == tpos {
                let coords: Vec<F::Elem> = (0..self.rank).map(|_| self.sample_unit(rng)).collect();
                m = mat_mul(&self.field, &m, &self.torus(&coords).unwrap());
            }
            if k < len {
                let r = rng.gen_range(0..self.roots.len());
                let c = self.sample_param(rng);
                m = self.root_mul_right(&m, r, &c);
            }
        }
        m
    }

    /// Parameters of a product of root elements in the given root order,
    /// read off by peeling from the left; `None` if a residue remains.
    pub fn peel(&self, m: &Mat<F::Elem>, order: &[usize]) -> Option<Vec<F::Elem>> {
        let f = &self.field;
        let mut cur = m.clone();
        let mut out = vec![];
        for &r in order {
            let (i, j, k) = self.roots[r].lin;
            let c = f.div(cur.get(i, j), &f.from_i64(k)).unwrap();
            if !f.is_zero(&c) {
                cur = self.root_mul_left(r, &f.neg(&c), &cur);
            }
            out.push(c);
        }
        (cur == self.identity()).then_some(out)
    }

    /// Checks form preservation of root elements, additivity, torus action
    /// and the Chevalley commutator relations on `samples` parameter draws.
    pub fn validate(&self, samples: usize, rng: &mut ChaCha8Rng) -> GResult<()> {
        let f = &self.field;
        let fail = |s: String| Err(GroupError::InvariantFailure(s));
        let nr = self.roots.len();
        for _ in 0..samples {
            let a = self.sample_param(rng);
            let b = self.sample_param(rng);
            for r in 0..nr {
                let x = self.root_element(r, &a);
                if !self.preserves_form(&x) {
                    return fail(format!("x_{}(t) leaves the form", self.roots[r].name));
                }
                if mat_mul(f, &x, &self.root_element(r, &b)) != self.root_element(r, &f.add(&a, &b)) {
                    return fail(format!("x_{} is not additive", self.roots[r].name));
                }
            }
            let coords: Vec<F::Elem> = (0..self.rank).map(|_| self.sample_unit(rng)).collect();
            let h = self.torus(&coords)?;
            let hi = self.torus(&coords.iter().map(|c| f.inv(c).unwrap()).collect::<Vec<_>>())?;
            for r in 0..nr {
                let lhs = mat_mul(f, &mat_mul(f, &h, &self.root_element(r, &a)), &hi);
                if lhs != self.root_element(r, &f.mul(&self.root_value(r, &coords), &a)) {
                    return fail(format!("torus acts wrongly on x_{}", self.roots[r].name));
                }
            }
            for r in 0..nr {
                for s in 0..nr {
                    if r == s || self.roots[r].neg == s {
                        continue;
                    }
                    let xr = self.root_element(r, &a);
                    let xs = self.root_element(s, &b);
                    let xri = self.root_element(r, &f.neg(&a));
                    let xsi = self.root_element(s, &f.neg(&b));
                    let comm = mat_mul(f, &mat_mul(f, &xr, &xs), &mat_mul(f, &xri, &xsi));
                    if self.peel(&comm, &self.commutator_roots(r, s)).is_none() {
                        return fail(format!("commutator of x_{} and x_{} leaves the expected root groups", self.roots[r].name, self.roots[s].name));
                    }
                }
            }
        }
        Ok(())
    }

    /// Roots i·r + j·s (i, j ≥ 1), ordered by i + j.
    pub fn commutator_roots(&self, r: usize, s: usize) -> Vec<usize> {
        let mut out = vec![];
        for level in 2..=6 {
            for i in 1..level {
                let j = level - i;
                let v: Vec<i32> = self.roots[r].vec.iter().zip(&self.roots[s].vec).map(|(x, y)| i as i32 * x + j as i32 * y).collect();
                if let Some(q) = self.roots.iter().position(|t| t.vec == v) {
                    out.push(q);
                }
            }
        }
        out
    }
}

/// Mᵀ·G·M.
fn congruent<F: Field>(f: &F, m: &Mat<F::Elem>, g: &Mat<F::Elem>) -> Mat<F::Elem> {
    mat_mul(f, &mat_mul(f, &m.transpose(), g), m)
}

fn quad<F: Field>(f: &F, g: &Mat<F::Elem>, v: &[F::Elem]) -> F::Elem {
    let mut acc = f.zero();
    for i in 0..g.rows {
        if f.is_zero(&v[i]) {
            continue;
        }
        for j in 0..g.cols {
            let c = g.get(i, j);
            if !f.is_zero(c) && !f.is_zero(&v[j]) {
                acc = f.add(&acc, &f.mul(c, &f.mul(&v[i], &v[j])));
            }
        }
    }
    acc
}

/// GroupSpec with the invariants of the realization checked on 20 draws.
pub fn chevalley_generators<F: Field>(kind: GroupType, rank: usize, field: F, seed: u64) -> GResult<GroupSpec<F>> {
    use rand::SeedableRng;
    let spec = GroupSpec::new(kind, rank, field)?;
    spec.validate(20, &mut ChaCha8Rng::seed_from_u64(seed))?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{FiniteField, FunctionField};
    use rand::SeedableRng;

    #[test]
    fn realizations_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (kind, rank, p, n) in [(GroupType::B, 2, 2, 3), (GroupType::C, 2, 2, 2), (GroupType::B, 3, 2, 2), (GroupType::C, 3, 2, 3), (GroupType::G2, 2, 3, 2)] {
            let f = FiniteField::new(p, n).unwrap();
            let g = GroupSpec::new(kind, rank, f).unwrap();
            g.validate(5, &mut rng).unwrap();
        }
        let f = FunctionField::new(2, &["s", "t"]).unwrap();
        GroupSpec::new(GroupType::B, 2, f).unwrap().validate(2, &mut rng).unwrap();
    }

    #[test]
    fn weyl_group_orders() {
        let f2 = FiniteField::new(2, 1).unwrap();
        let f3 = FiniteField::new(3, 1).unwrap();
        assert_eq!(GroupSpec::new(GroupType::B, 2, f2.clone()).unwrap().weyl.len(), 8);
        assert_eq!(GroupSpec::new(GroupType::C, 2, f2.clone()).unwrap().weyl.len(), 8);
        assert_eq!(GroupSpec::new(GroupType::C, 3, f2).unwrap().weyl.len(), 48);
        let g2 = GroupSpec::new(GroupType::G2, 2, f3).unwrap();
        assert_eq!(g2.weyl.len(), 12);
        assert_eq!(g2.positive.len(), 6);
        let names: Vec<&str> = g2.simple.iter().map(|&s| g2.roots[s].name.as_str()).collect();
        assert_eq!(names, ["b", "a"]);
    }

    #[test]
    fn root_element_examples() {
        let f = FiniteField::new(2, 1).unwrap();
        let b2 = GroupSpec::new(GroupType::B, 2, f).unwrap();
        for r in 0..b2.nroots() {
            assert_eq!(b2.root_element(r, &0), b2.identity());
        }
        let f4 = FiniteField::new(2, 2).unwrap();
        let c2 = GroupSpec::new(GroupType::C, 2, f4.clone()).unwrap();
        for r in 0..c2.nroots() {
            for s in 0..4 {
                for t in 0..4 {
                    let lhs = mat_mul(&f4, &c2.root_element(r, &s), &c2.root_element(r, &t));
                    assert_eq!(lhs, c2.root_element(r, &f4.add(&s, &t)));
                }
            }
        }
    }

    #[test]
    fn torus_round_trip() {
        let f = FiniteField::new(2, 3).unwrap();
        for kind in [GroupType::B, GroupType::C] {
            let g = GroupSpec::new(kind, 2, f.clone()).unwrap();
            let coords = vec![3, 5];
            assert_eq!(g.torus_from_values(&g.simple_values(&coords)).unwrap(), coords);
            assert_eq!(g.torus_coords(&g.torus(&coords).unwrap()), coords);
        }
        let f9 = FiniteField::new(3, 2).unwrap();
        let g = GroupSpec::new(GroupType::G2, 2, f9).unwrap();
        let coords = vec![4, 7];
        assert_eq!(g.torus_from_values(&g.simple_values(&coords)).unwrap(), coords);
    }

    #[test]
    fn unsupported_characteristic() {
        let f = FiniteField::new(3, 1).unwrap();
        assert!(GroupSpec::new(GroupType::B, 2, f).is_err());
    }
}
