//! Tunnel hook coverings: enumeration, the permutation bijection for
//! unskewed shapes, and the transposition involution.

use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::algebra::{normalize_h_index, Composition, IntSeq, Permutation};
use crate::diagram::{build_diagram, Cell, GbprDiagram, TunnelHook};
use crate::error::{Error, Result};
use crate::Options;

/// One hook per row, each built on the diagram left by the previous ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TunnelHookCovering {
    pub mu: IntSeq,
    pub nu0: IntSeq,
    pub hooks: Vec<TunnelHook>,
    pub delta_seq: IntSeq,
    pub total_sign: i8,
    /// Present exactly when `nu0` is zero.
    pub sigma: Option<Permutation>,
}

impl TunnelHookCovering {
    fn from_hooks(mu: IntSeq, nu0: IntSeq, hooks: Vec<TunnelHook>) -> Self {
        let delta_seq: IntSeq = hooks.iter().map(|h| h.delta).collect();
        let total_sign = hooks.iter().map(|h| h.sign).product();
        let sigma = if nu0.is_all_zero() {
            let one_line = hooks.iter().map(|h| h.terminal.row + 1 - h.terminal.col).collect();
            Some(Permutation::new(one_line).expect("terminal diagonals form a permutation"))
        } else {
            None
        };
        TunnelHookCovering { mu, nu0, hooks, delta_seq, total_sign, sigma }
    }

    pub fn k(&self) -> usize {
        self.mu.len()
    }

    pub fn terminal_cells(&self) -> Vec<Cell> {
        self.hooks.iter().map(|h| h.terminal).collect()
    }

    /// `nu^(0), nu^(1), ..., nu^(k)`.
    pub fn nu_stages(&self) -> Vec<IntSeq> {
        let k = self.k();
        let mut cur = self.nu0.to_vec();
        let mut out = vec![IntSeq::new(cur.clone())];
        for h in &self.hooks {
            for (v, e) in cur.iter_mut().zip(h.eta(k)) {
                *v += e;
            }
            out.push(IntSeq::new(cur.clone()));
        }
        out
    }

    /// The H index contributed by this covering, or `None` if a negative
    /// delta kills it.
    pub fn h_index(&self) -> Option<Composition> {
        normalize_h_index(&self.delta_seq)
    }
}

impl Serialize for TunnelHookCovering {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let cells: Vec<[usize; 2]> = self.hooks.iter().map(|h| [h.terminal.row, h.terminal.col]).collect();
        let mut st = serializer.serialize_struct("TunnelHookCovering", 4)?;
        st.serialize_field("terminal_cells", &cells)?;
        st.serialize_field("delta", self.delta_seq.as_slice())?;
        st.serialize_field("sign", &self.total_sign)?;
        st.serialize_field("sigma", &self.sigma.as_ref().map(|s| s.one_line()))?;
        st.end()
    }
}

struct Frame {
    diagram: GbprDiagram,
    choices: Vec<TunnelHook>,
    next: usize,
}

/// Depth-first stream of coverings; at every step tunnel cells are tried
/// bottom-up.
pub struct CoveringIter {
    mu: IntSeq,
    nu0: IntSeq,
    stack: Vec<Frame>,
    path: Vec<TunnelHook>,
    empty_pending: bool,
}

impl CoveringIter {
    fn start(mu: IntSeq, nu0: IntSeq, diagram: GbprDiagram, path: Vec<TunnelHook>) -> Self {
        let mut it = CoveringIter { mu, nu0, stack: Vec::new(), path, empty_pending: false };
        if diagram.is_exhausted() {
            it.empty_pending = true;
        } else {
            it.push(diagram);
        }
        it
    }

    fn push(&mut self, diagram: GbprDiagram) {
        let choices = diagram.hooks().collect();
        self.stack.push(Frame { diagram, choices, next: 0 });
    }
}

impl Iterator for CoveringIter {
    type Item = TunnelHookCovering;

    fn next(&mut self) -> Option<TunnelHookCovering> {
        if self.empty_pending {
            self.empty_pending = false;
            return Some(TunnelHookCovering::from_hooks(self.mu.clone(), self.nu0.clone(), self.path.clone()));
        }
        loop {
            let frame = self.stack.last_mut()?;
            if frame.next == frame.choices.len() {
                self.stack.pop();
                if !self.stack.is_empty() {
                    self.path.pop();
                }
                continue;
            }
            let hook = frame.choices[frame.next].clone();
            frame.next += 1;
            let after = frame.diagram.apply_hook(&hook).expect("hook from this diagram");
            if after.is_exhausted() {
                let mut hooks = self.path.clone();
                hooks.push(hook);
                return Some(TunnelHookCovering::from_hooks(self.mu.clone(), self.nu0.clone(), hooks));
            }
            self.path.push(hook);
            self.push(after);
        }
    }
}

fn base_diagram(mu: &IntSeq, nu: &IntSeq, opts: &Options) -> Result<GbprDiagram> {
    opts.check(mu.len())?;
    build_diagram(mu, nu, 0)
}

/// All `k!` coverings of `D_{mu/nu}`, lazily.
pub fn enumerate_coverings(mu: &IntSeq, nu: &IntSeq, opts: &Options) -> Result<CoveringIter> {
    let d = base_diagram(mu, nu, opts)?;
    Ok(CoveringIter::start(mu.clone(), nu.clone(), d, Vec::new()))
}

/// Folds every covering into an accumulator. With `opts.jobs > 1` the
/// coverings are split by their first hook across a thread pool and the
/// partial results combined with `merge`.
pub fn fold_coverings<T, F, M>(
    mu: &IntSeq,
    nu: &IntSeq,
    opts: &Options,
    init: impl Fn() -> T + Sync,
    fold: F,
    merge: M,
) -> Result<T>
where
    T: Send,
    F: Fn(T, TunnelHookCovering) -> T + Sync,
    M: Fn(T, T) -> T + Sync,
{
    let d = base_diagram(mu, nu, opts)?;
    if opts.jobs <= 1 || d.is_exhausted() {
        return Ok(CoveringIter::start(mu.clone(), nu.clone(), d, Vec::new()).fold(init(), fold));
    }
    let firsts: Vec<TunnelHook> = d.hooks().collect();
    let branch = |hook: TunnelHook| {
        let after = d.apply_hook(&hook).expect("hook from this diagram");
        CoveringIter::start(mu.clone(), nu.clone(), after, vec![hook]).fold(init(), &fold)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Parse(format!("thread pool: {}", e)))?;
    Ok(pool.install(|| firsts.into_par_iter().map(branch).reduce(&init, &merge)))
}

/// Builds the covering whose hooks end at `terminals`, in order.
pub fn covering_from_terminals(mu: &IntSeq, nu: &IntSeq, terminals: &[Cell]) -> Result<TunnelHookCovering> {
    let k = mu.len();
    if terminals.len() != k {
        return Err(Error::LengthMismatch { mu: k, nu: terminals.len() });
    }
    let mut d = build_diagram(mu, nu, 0)?;
    let mut hooks = Vec::with_capacity(k);
    for &tau in terminals {
        let h = d.make_tunnel_hook(tau)?;
        d = d.apply_hook(&h)?;
        hooks.push(h);
    }
    Ok(TunnelHookCovering::from_hooks(mu.clone(), nu.clone(), hooks))
}

/// Terminal cells of the covering labelled by `sigma`:
/// `tau_r = (sigma_r + m, 1 + m)` with `m = #{i < r : sigma_i > sigma_r}`.
pub fn terminal_cells_of(sigma: &Permutation) -> Vec<Cell> {
    let s = sigma.one_line();
    (0..s.len())
        .map(|r| {
            let m = s[..r].iter().filter(|&&x| x > s[r]).count();
            Cell::new(s[r] + m, 1 + m)
        })
        .collect()
}

pub fn covering_from_permutation(mu: &IntSeq, sigma: &Permutation) -> Result<TunnelHookCovering> {
    if sigma.len() != mu.len() {
        return Err(Error::PermutationLength { sigma: sigma.len(), mu: mu.len() });
    }
    covering_from_terminals(mu, &IntSeq::zeros(mu.len()), &terminal_cells_of(sigma))
}

pub fn permutation_from_covering(g: &TunnelHookCovering) -> Result<Permutation> {
    g.sigma.clone().ok_or(Error::SkewCovering)
}

/// The covering labelled by `s_i(sigma)`, obtained by moving terminal cells
/// `i` and `i+1` along their diagonals.
pub fn transpose_covering(g: &TunnelHookCovering, i: usize) -> Result<TunnelHookCovering> {
    if g.sigma.is_none() {
        return Err(Error::SkewCovering);
    }
    let k = g.k();
    if i == 0 || i >= k {
        return Err(Error::IndexOutOfRange { index: i, k });
    }
    let mut cells = g.terminal_cells();
    let (a, b) = (cells[i - 1], cells[i]);
    let diag = |c: Cell| c.row as i64 - c.col as i64;
    let (new_a, new_b) =
        if diag(a) < diag(b) { (b, Cell::new(a.row + 1, a.col + 1)) } else { (Cell::new(b.row - 1, b.col - 1), a) };
    cells[i - 1] = new_a;
    cells[i] = new_b;
    covering_from_terminals(&g.mu, &g.nu0, &cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[i64]) -> IntSeq {
        IntSeq::from(v)
    }

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn all(mu: &[i64], nu: &[i64]) -> Vec<TunnelHookCovering> {
        enumerate_coverings(&seq(mu), &seq(nu), &Options::default()).unwrap().collect()
    }

    #[test]
    fn coverings_of_313() {
        let got: Vec<(Vec<i64>, i8)> =
            all(&[3, 1, 3], &[0, 0, 0]).into_iter().map(|g| (g.delta_seq.to_vec(), g.total_sign)).collect();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        assert_eq!(
            got_sorted,
            vec![
                (vec![3, 1, 3], 1),
                (vec![3, 2, 2], -1),
                (vec![4, 0, 3], -1),
                (vec![4, 2, 1], 1),
                (vec![5, 0, 2], 1),
                (vec![5, 1, 1], -1),
            ]
        );
    }

    #[test]
    fn trivial_sizes() {
        let one = all(&[7], &[0]);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].delta_seq.as_slice(), &[7]);
        let none = all(&[], &[]);
        assert_eq!(none.len(), 1);
        assert!(none[0].hooks.is_empty());
        assert_eq!(none[0].total_sign, 1);
        assert_eq!(none[0].h_index(), Some(Composition::empty()));
    }

    #[test]
    fn enumeration_order_is_bottom_up() {
        let cells: Vec<Vec<Cell>> = all(&[1, 1], &[0, 0]).iter().map(|g| g.terminal_cells()).collect();
        assert_eq!(cells, vec![vec![Cell::new(1, 1), Cell::new(2, 1)], vec![Cell::new(2, 1), Cell::new(2, 2)]]);
    }

    #[test]
    fn bound_is_enforced() {
        let mu = IntSeq::zeros(4);
        let opts = Options { max_k: 3, jobs: 1 };
        assert!(matches!(enumerate_coverings(&mu, &mu, &opts), Err(Error::BoundExceeded { k: 4, max: 3 })));
        let wild = Options { max_k: 20, jobs: 1 };
        assert!(matches!(enumerate_coverings(&mu, &mu, &wild), Err(Error::BoundTooLarge(20))));
    }

    #[test]
    fn worked_covering_replay() {
        let mu = seq(&[-3, 5, 5, 0, 5, -2, 4, 6]);
        let nu = seq(&[2, 1, 0, 0, 0, 0, 0, 0]);
        let taus: Vec<Cell> =
            [(5, 1), (2, 4), (4, 2), (5, 2), (5, 5), (8, 1), (8, 2), (8, 3)].iter().map(|&c| c.into()).collect();
        let g = covering_from_terminals(&mu, &nu, &taus).unwrap();
        assert_eq!(g.delta_seq.as_slice(), &[1, 2, 5, 0, 1, 0, 4, 4]);
        assert!(g.sigma.is_none());
        let stages: Vec<Vec<i64>> = g.nu_stages().iter().map(|s| s.to_vec()).collect();
        assert_eq!(
            stages[..8],
            [
                vec![2, 1, 0, 0, 0, 0, 0, 0],
                vec![7, 3, 2, 1, 1, 0, 0, 0],
                vec![7, 5, 2, 1, 1, 0, 0, 0],
                vec![7, 5, 5, 3, 1, 0, 0, 0],
                vec![7, 5, 5, 6, 4, 0, 0, 0],
                vec![7, 5, 5, 6, 5, 0, 0, 0],
                vec![7, 5, 5, 6, 5, 2, 1, 1],
                vec![7, 5, 5, 6, 5, 2, 4, 2],
            ]
        );
    }

    #[test]
    fn permutation_example() {
        let s = perm(&[4, 7, 3, 1, 6, 2, 5]);
        let g = covering_from_permutation(&seq(&[1, 2, 3, 4, 5, 6, 7]), &s).unwrap();
        let expected: Vec<Cell> =
            [(4, 1), (7, 1), (5, 3), (4, 4), (7, 2), (6, 5), (7, 3)].iter().map(|&c| c.into()).collect();
        assert_eq!(g.terminal_cells(), expected);
        assert_eq!(permutation_from_covering(&g).unwrap(), s);
        let rows: Vec<usize> = g.hooks.iter().map(|h| h.rows_covered() - 1).collect();
        assert_eq!(rows, s.lehmer_code());
    }

    #[test]
    fn permutation_delta_example() {
        let g = covering_from_permutation(&seq(&[3, 1, 3]), &perm(&[2, 1, 3])).unwrap();
        assert_eq!(g.delta_seq.as_slice(), &[4, 0, 3]);
        let id = covering_from_permutation(&seq(&[2, -1, 5]), &Permutation::identity(3)).unwrap();
        assert_eq!(id.delta_seq.as_slice(), &[2, -1, 5]);
        assert!(id.hooks.iter().all(|h| h.rows_covered() == 1));
        assert!(covering_from_permutation(&seq(&[1, 1]), &Permutation::identity(3)).is_err());
    }

    #[test]
    fn skew_coverings_have_no_permutation() {
        let g = &all(&[2, 2], &[1, 0])[0];
        assert_eq!(permutation_from_covering(g), Err(Error::SkewCovering));
        assert_eq!(transpose_covering(g, 1), Err(Error::SkewCovering));
    }

    #[test]
    fn transpose_matches_swapped_permutation() {
        let mu = seq(&[2, 2, 2]);
        for g in all(&[2, 2, 2], &[0, 0, 0]) {
            for i in 1..3 {
                let t = transpose_covering(&g, i).unwrap();
                let s = g.sigma.as_ref().unwrap().swap_adjacent(i).unwrap();
                assert_eq!(t, covering_from_permutation(&mu, &s).unwrap());
                assert_eq!(t.total_sign, -g.total_sign);
                assert_eq!(transpose_covering(&t, i).unwrap(), g);
                let (d, e) = (&g.delta_seq, &t.delta_seq);
                assert_eq!(d[i - 1] + d[i], e[i - 1] + e[i]);
                for j in (0..3).filter(|&j| j != i - 1 && j != i) {
                    assert_eq!(d[j], e[j]);
                }
            }
            assert!(transpose_covering(&g, 0).is_err());
            assert!(transpose_covering(&g, 3).is_err());
        }
    }

    #[test]
    fn json_shape() {
        let g = covering_from_permutation(&seq(&[3, 1]), &perm(&[2, 1])).unwrap();
        assert_eq!(
            serde_json::to_string(&g).unwrap(),
            r#"{"terminal_cells":[[2,1],[2,2]],"delta":[4,0],"sign":-1,"sigma":[2,1]}"#
        );
        let s = &all(&[1], &[1])[0];
        assert_eq!(
            serde_json::to_string(s).unwrap(),
            r#"{"terminal_cells":[[1,2]],"delta":[0],"sign":1,"sigma":null}"#
        );
    }

    #[test]
    fn parallel_fold_matches_serial() {
        let mu = seq(&[2, -1, 3, 1, 0]);
        let nu = seq(&[3, 2, 2, 0, 0]);
        let count = |jobs| {
            let opts = Options { jobs, ..Options::default() };
            fold_coverings(
                &mu,
                &nu,
                &opts,
                || (0usize, 0i64),
                |(n, s), g| (n + 1, s + g.total_sign as i64),
                |a, b| (a.0 + b.0, a.1 + b.1),
            )
            .unwrap()
        };
        assert_eq!(count(1), count(3));
        assert_eq!(count(1).0, 120);
    }
}
