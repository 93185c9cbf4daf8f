use super::{CResult, CatError, Category, Extensive};
use std::fmt;

/// A finite set {0..n} with a self-map σ; F on this object is σ itself.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dyn {
    pub sigma: Vec<u8>,
}

impl fmt::Debug for Dyn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.sigma)
    }
}

impl Dyn {
    pub fn new(sigma: Vec<u8>) -> CResult<Self> {
        let n = sigma.len();
        if sigma.iter().any(|&s| s as usize >= n) {
            return Err(CatError::Invalid("self-map"));
        }
        Ok(Dyn { sigma })
    }
    pub fn size(&self) -> usize {
        self.sigma.len()
    }
    pub fn identity(n: usize) -> Self {
        Dyn { sigma: (0..n as u8).collect() }
    }
}

/// An equivariant map between dynamical systems.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DArr {
    pub dom: Dyn,
    pub cod: Dyn,
    pub map: Vec<u8>,
}

impl fmt::Debug for DArr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}->{:?}:{:?}", self.dom, self.cod, self.map)
    }
}

impl DArr {
    pub fn new(dom: &Dyn, cod: &Dyn, map: Vec<u8>) -> CResult<Self> {
        let ok = map.len() == dom.size()
            && map.iter().all(|&v| (v as usize) < cod.size())
            && (0..dom.size()).all(|i| map[dom.sigma[i] as usize] == cod.sigma[map[i] as usize]);
        if !ok {
            return Err(CatError::Invalid("equivariant map"));
        }
        Ok(DArr { dom: dom.clone(), cod: cod.clone(), map })
    }

    pub fn is_bijective(&self) -> bool {
        if self.dom.size() != self.cod.size() {
            return false;
        }
        let mut seen = vec![false; self.cod.size()];
        self.map.iter().all(|&v| !std::mem::replace(&mut seen[v as usize], true))
    }
}

/// All maps f: x → y with f∘σ_x = σ_y∘f. Choosing f at one point forces it
/// along the forward orbit, so the search branches only where it must.
pub fn equivariant_maps(x: &Dyn, y: &Dyn) -> Vec<Vec<u8>> {
    fn go(x: &[u8], y: &[u8], f: &mut Vec<Option<u8>>, start: usize, out: &mut Vec<Vec<u8>>) {
        let Some(a) = (start..x.len()).find(|&i| f[i].is_none()) else {
            out.push(f.iter().map(|v| v.unwrap()).collect());
            return;
        };
        for v in 0..y.len() as u8 {
            let mut touched = Vec::new();
            let (mut p, mut val) = (a, v);
            let ok = loop {
                match f[p] {
                    Some(w) => break w == val,
                    None => {
                        f[p] = Some(val);
                        touched.push(p);
                        p = x[p] as usize;
                        val = y[val as usize];
                    }
                }
            };
            if ok {
                go(x, y, f, a + 1, out);
            }
            for t in touched {
                f[t] = None;
            }
        }
    }
    let mut out = Vec::new();
    if x.size() > 0 && y.size() == 0 {
        return out;
    }
    go(&x.sigma, &y.sigma, &mut vec![None; x.size()], 0, &mut out);
    out
}

/// Finite dynamical systems of size 1..=max_size.
#[derive(Clone, Debug)]
pub struct DynSys {
    pub max_size: usize,
}

pub const DYNSYS_MAX: usize = 5;

pub fn dynsys_category(max_size: usize) -> CResult<DynSys> {
    if max_size > DYNSYS_MAX {
        return Err(CatError::SizeExceeded(max_size));
    }
    Ok(DynSys { max_size })
}

/// Every self-map of {0..n}.
pub fn all_self_maps(n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u8>| {
                (0..n as u8).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

impl Category for DynSys {
    type Obj = Dyn;
    type Arr = DArr;

    fn objects(&self) -> Vec<Dyn> {
        (1..=self.max_size).flat_map(all_self_maps).map(|sigma| Dyn { sigma }).collect()
    }
    fn hom(&self, x: &Dyn, y: &Dyn) -> Vec<DArr> {
        equivariant_maps(x, y).into_iter().map(|map| DArr { dom: x.clone(), cod: y.clone(), map }).collect()
    }
    fn dom(&self, f: &DArr) -> Dyn {
        f.dom.clone()
    }
    fn cod(&self, f: &DArr) -> Dyn {
        f.cod.clone()
    }
    fn id(&self, x: &Dyn) -> DArr {
        DArr { dom: x.clone(), cod: x.clone(), map: (0..x.size() as u8).collect() }
    }
    fn compose(&self, g: &DArr, f: &DArr) -> DArr {
        debug_assert_eq!(f.cod, g.dom);
        DArr { dom: f.dom.clone(), cod: g.cod.clone(), map: f.map.iter().map(|&i| g.map[i as usize]).collect() }
    }
    fn endo(&self, x: &Dyn) -> DArr {
        DArr { dom: x.clone(), cod: x.clone(), map: x.sigma.clone() }
    }
    fn inverse(&self, f: &DArr) -> Option<DArr> {
        if !f.is_bijective() {
            return None;
        }
        let mut inv = vec![0u8; f.map.len()];
        for (i, &v) in f.map.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Some(DArr { dom: f.cod.clone(), cod: f.dom.clone(), map: inv })
    }
    fn find_iso(&self, x: &Dyn, y: &Dyn) -> Option<DArr> {
        if x.size() != y.size() || cycle_type(x) != cycle_type(y) {
            return None;
        }
        self.hom(x, y).into_iter().find(|f| f.is_bijective())
    }
}

/// Sorted multiset of (orbit-tail length, cycle length) pairs; an
/// isomorphism invariant used to skip hopeless searches.
fn cycle_type(x: &Dyn) -> Vec<(usize, usize)> {
    let n = x.size();
    let mut t: Vec<(usize, usize)> = (0..n)
        .map(|i| {
            let mut seen = vec![usize::MAX; n];
            let (mut p, mut k) = (i, 0);
            while seen[p] == usize::MAX {
                seen[p] = k;
                p = x.sigma[p] as usize;
                k += 1;
            }
            (seen[p], k - seen[p])
        })
        .collect();
    t.sort_unstable();
    t
}

impl Extensive for DynSys {
    fn terminal(&self) -> Dyn {
        Dyn { sigma: vec![0] }
    }

    fn coproduct(&self, x: &Dyn, y: &Dyn) -> Option<(Dyn, DArr, DArr)> {
        let nx = x.size() as u8;
        let mut sigma = x.sigma.clone();
        sigma.extend(y.sigma.iter().map(|&s| s + nx));
        let s = Dyn { sigma };
        let i1 = DArr { dom: x.clone(), cod: s.clone(), map: (0..nx).collect() };
        let i2 = DArr { dom: y.clone(), cod: s.clone(), map: (0..y.size() as u8).map(|j| j + nx).collect() };
        Some((s, i1, i2))
    }

    fn copair(&self, f: &DArr, g: &DArr) -> DArr {
        debug_assert_eq!(f.cod, g.cod);
        let (s, _, _) = self.coproduct(&f.dom, &g.dom).unwrap();
        let mut map = f.map.clone();
        map.extend_from_slice(&g.map);
        DArr { dom: s, cod: f.cod.clone(), map }
    }

    fn product(&self, x: &Dyn, y: &Dyn) -> Option<(Dyn, DArr, DArr)> {
        let (nx, ny) = (x.size(), y.size());
        let sigma = (0..nx * ny).map(|k| (x.sigma[k / ny] as usize * ny + y.sigma[k % ny] as usize) as u8).collect();
        let p = Dyn { sigma };
        let p1 = DArr { dom: p.clone(), cod: x.clone(), map: (0..nx * ny).map(|k| (k / ny) as u8).collect() };
        let p2 = DArr { dom: p.clone(), cod: y.clone(), map: (0..nx * ny).map(|k| (k % ny) as u8).collect() };
        Some((p, p1, p2))
    }

    fn pair(&self, f: &DArr, g: &DArr) -> DArr {
        debug_assert_eq!(f.dom, g.dom);
        let (p, _, _) = self.product(&f.cod, &g.cod).unwrap();
        let ny = g.cod.size();
        let map = f.map.iter().zip(&g.map).map(|(&a, &b)| (a as usize * ny + b as usize) as u8).collect();
        DArr { dom: f.dom.clone(), cod: p, map }
    }

    fn pullback(&self, f: &DArr, g: &DArr) -> Option<(Dyn, DArr, DArr)> {
        debug_assert_eq!(f.cod, g.cod);
        let pts = pullback_points(f, g);
        let idx = |a: u8, b: u8| pts.iter().position(|&q| q == (a, b)).unwrap() as u8;
        let sigma = pts.iter().map(|&(a, b)| idx(f.dom.sigma[a as usize], g.dom.sigma[b as usize])).collect();
        let p = Dyn { sigma };
        let p1 = DArr { dom: p.clone(), cod: f.dom.clone(), map: pts.iter().map(|q| q.0).collect() };
        let p2 = DArr { dom: p.clone(), cod: g.dom.clone(), map: pts.iter().map(|q| q.1).collect() };
        Some((p, p1, p2))
    }

    fn pullback_pair(&self, f: &DArr, g: &DArr, a: &DArr, b: &DArr) -> DArr {
        let (p, _, _) = self.pullback(f, g).unwrap();
        let pts = pullback_points(f, g);
        let map = a
            .map
            .iter()
            .zip(&b.map)
            .map(|(&u, &v)| pts.iter().position(|&q| q == (u, v)).expect("pair commutes") as u8)
            .collect();
        DArr { dom: a.dom.clone(), cod: p, map }
    }
}

fn pullback_points(f: &DArr, g: &DArr) -> Vec<(u8, u8)> {
    let mut pts = Vec::new();
    for a in 0..f.dom.size() as u8 {
        for b in 0..g.dom.size() as u8 {
            if f.map[a as usize] == g.map[b as usize] {
                pts.push((a, b));
            }
        }
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(x: &Dyn, y: &Dyn) -> usize {
        let n = x.size();
        let mut count = 0;
        let total = (y.size() as u64).pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let f: Vec<u8> = (0..n)
                .map(|_| {
                    let v = (c % y.size() as u64) as u8;
                    c /= y.size() as u64;
                    v
                })
                .collect();
            if (0..n).all(|i| f[x.sigma[i] as usize] == y.sigma[f[i] as usize]) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn hom_enumeration_matches_brute_force() {
        let c = dynsys_category(3).unwrap();
        let objs = c.objects();
        assert_eq!(objs.len(), 1 + 4 + 27);
        for x in &objs {
            for y in &objs {
                assert_eq!(c.hom(x, y).len(), brute(x, y), "{x:?} {y:?}");
            }
        }
    }

    #[test]
    fn size_two_objects_are_the_four_self_maps() {
        let c = dynsys_category(2).unwrap();
        let two: Vec<Vec<u8>> = c.objects().into_iter().filter(|o| o.size() == 2).map(|o| o.sigma).collect();
        assert_eq!(two, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(c.objects().iter().filter(|o| o.size() == 1).count(), 1);
        assert_eq!(dynsys_category(6).unwrap_err(), CatError::SizeExceeded(6));
    }

    #[test]
    fn pullback_is_fibered_product() {
        let c = dynsys_category(3).unwrap();
        let s = Dyn::new(vec![1, 0]).unwrap();
        let x = Dyn::new(vec![1, 0, 3, 2]).unwrap();
        let f = DArr::new(&x, &s, vec![0, 1, 1, 0]).unwrap();
        let g = c.id(&s);
        let (p, p1, p2) = c.pullback(&f, &g).unwrap();
        assert_eq!(p.size(), 4);
        assert_eq!(c.compose(&f, &p1), c.compose(&g, &p2));
        assert!(DArr::new(&p, &x, p1.map.clone()).is_ok());
    }
}
