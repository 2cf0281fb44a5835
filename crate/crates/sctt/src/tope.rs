//! The shape layer: cube contexts, tope formulas, and a decision procedure
//! for entailment in the strict-interval theory.
//!
//! The interval is a total order with distinct endpoints 0 < 1, and every
//! cube variable lies between them. A finite complete model family for this
//! theory is given by *weak orders*: ordered partitions of the variables
//! together with 0 and 1 into blocks, where 0's block comes strictly first
//! and 1's block strictly last. Entailment `hyp => goal` holds exactly when
//! every weak order satisfying `hyp` satisfies `goal`, so we decide it by
//! enumerating all weak orders of the ambient cube context.

use std::fmt;

/// Default cap on cube-context size; ordered-partition count grows fast.
pub const DEFAULT_CUBE_CAP: usize = 8;

/// An interval expression: a cube variable or an endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Interval<V> {
    Zero,
    One,
    Var(V),
}

impl<V> Interval<V> {
    pub fn map<W>(&self, f: &mut impl FnMut(&V) -> W) -> Interval<W> {
        match self {
            Interval::Zero => Interval::Zero,
            Interval::One => Interval::One,
            Interval::Var(v) => Interval::Var(f(v)),
        }
    }
}

/// A tope formula in the coherent fragment: no negation, no implication.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tope<V> {
    Top,
    Bot,
    Le(Interval<V>, Interval<V>),
    Eq(Interval<V>, Interval<V>),
    And(Box<Tope<V>>, Box<Tope<V>>),
    Or(Box<Tope<V>>, Box<Tope<V>>),
}

impl<V> Tope<V> {
    pub fn and(a: Tope<V>, b: Tope<V>) -> Tope<V> {
        Tope::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Tope<V>, b: Tope<V>) -> Tope<V> {
        Tope::Or(Box::new(a), Box::new(b))
    }

    /// Conjunction of a list; empty list is Top.
    pub fn disj(parts: impl IntoIterator<Item = Tope<V>>) -> Tope<V> {
        let mut it = parts.into_iter();
        match it.next() {
            None => Tope::Bot,
            Some(first) => it.fold(first, Tope::or),
        }
    }

    pub fn conj(mut parts: Vec<Tope<V>>) -> Tope<V> {
        match parts.len() {
            0 => Tope::Top,
            1 => parts.pop().unwrap(),
            _ => {
                let mut it = parts.into_iter();
                let first = it.next().unwrap();
                it.fold(first, Tope::and)
            }
        }
    }

    pub fn map_vars<W>(&self, f: &mut impl FnMut(&V) -> W) -> Tope<W> {
        match self {
            Tope::Top => Tope::Top,
            Tope::Bot => Tope::Bot,
            Tope::Le(a, b) => Tope::Le(a.map(f), b.map(f)),
            Tope::Eq(a, b) => Tope::Eq(a.map(f), b.map(f)),
            Tope::And(a, b) => Tope::and(a.map_vars(f), b.map_vars(f)),
            Tope::Or(a, b) => Tope::or(a.map_vars(f), b.map_vars(f)),
        }
    }

    pub fn for_each_var(&self, f: &mut impl FnMut(&V)) {
        match self {
            Tope::Top | Tope::Bot => {}
            Tope::Le(a, b) | Tope::Eq(a, b) => {
                if let Interval::Var(v) = a {
                    f(v);
                }
                if let Interval::Var(v) = b {
                    f(v);
                }
            }
            Tope::And(a, b) | Tope::Or(a, b) => {
                a.for_each_var(f);
                b.for_each_var(f);
            }
        }
    }
}

/// Raised when a cube context exceeds the configured cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextTooLarge {
    pub size: usize,
    pub cap: usize,
}

impl fmt::Display for ContextTooLarge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cube context has {} variables, exceeding the cap of {}",
            self.size, self.cap
        )
    }
}

/// An element of a weak-order carrier: an endpoint or a cube variable,
/// identified by its index in the ambient cube context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Elem {
    Zero,
    Var(usize),
    One,
}

/// An ordered partition of `{0, 1} ∪ {vars}` into nonempty blocks, with 0's
/// block strictly first and 1's block strictly last. Elements sharing a
/// block are equal; blocks are strictly increasing left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakOrder {
    /// `rank[i]` is the block index of variable `i`.
    ranks: Vec<usize>,
    /// Total number of blocks; 0 sits in block 0, 1 in block `n_blocks-1`.
    n_blocks: usize,
}

impl WeakOrder {
    pub fn n_vars(&self) -> usize {
        self.ranks.len()
    }

    pub fn n_blocks(&self) -> usize {
        self.n_blocks
    }

    pub fn rank(&self, e: Elem) -> usize {
        match e {
            Elem::Zero => 0,
            Elem::One => self.n_blocks - 1,
            Elem::Var(i) => self.ranks[i],
        }
    }

    /// Sort key: the block-index vector in context order, then block count.
    /// "Lexicographically least" counter-orders are least under this key.
    fn key(&self) -> (Vec<usize>, usize) {
        (self.ranks.clone(), self.n_blocks)
    }

    /// Evaluate an atom or formula over variable indices.
    pub fn eval(&self, phi: &Tope<usize>) -> bool {
        match phi {
            Tope::Top => true,
            Tope::Bot => false,
            Tope::Le(a, b) => self.rank(elem(a)) <= self.rank(elem(b)),
            Tope::Eq(a, b) => self.rank(elem(a)) == self.rank(elem(b)),
            Tope::And(a, b) => self.eval(a) && self.eval(b),
            Tope::Or(a, b) => self.eval(a) || self.eval(b),
        }
    }

    /// A rational witness for this order: block `k` of `m` maps to
    /// `k/(m-1)`, so denominators stay at most `n_vars + 1`.
    pub fn rational_witness(&self) -> Vec<(u32, u32)> {
        let den = (self.n_blocks - 1) as u32;
        self.ranks.iter().map(|&r| (r as u32, den)).collect()
    }

    /// Render as blocks joined by `<`, e.g. `{0,s} < {t} < {1}`.
    pub fn render(&self, names: &[String]) -> String {
        let mut blocks: Vec<Vec<String>> = vec![Vec::new(); self.n_blocks];
        blocks[0].push("0".to_string());
        for (i, &r) in self.ranks.iter().enumerate() {
            blocks[r].push(names.get(i).cloned().unwrap_or_else(|| format!("t{i}")));
        }
        blocks[self.n_blocks - 1].push("1".to_string());
        blocks
            .iter()
            .map(|b| format!("{{{}}}", b.join(",")))
            .collect::<Vec<_>>()
            .join(" < ")
    }
}

fn elem(i: &Interval<usize>) -> Elem {
    match i {
        Interval::Zero => Elem::Zero,
        Interval::One => Elem::One,
        Interval::Var(v) => Elem::Var(*v),
    }
}

/// Enumerate every weak order of an `n_vars`-element cube context, in
/// canonical (sorted) order. Built by inserting variables one at a time:
/// a new variable either joins an existing block or opens a new block in
/// one of the gaps strictly between 0's block and 1's block.
pub fn enumerate_weak_orders(
    n_vars: usize,
    cap: usize,
) -> Result<Vec<WeakOrder>, ContextTooLarge> {
    if n_vars > cap {
        return Err(ContextTooLarge { size: n_vars, cap });
    }
    let mut orders = vec![WeakOrder {
        ranks: Vec::new(),
        n_blocks: 2,
    }];
    for var in 0..n_vars {
        let mut next = Vec::new();
        for o in &orders {
            let k = o.n_blocks;
            // join block j
            for j in 0..k {
                let mut ranks = o.ranks.clone();
                ranks.push(j);
                debug_assert_eq!(ranks.len(), var + 1);
                next.push(WeakOrder {
                    ranks,
                    n_blocks: k,
                });
            }
            // new block in internal gap g (after block g-1), g = 1..k-1
            for g in 1..k {
                let mut ranks: Vec<usize> =
                    o.ranks.iter().map(|&r| if r >= g { r + 1 } else { r }).collect();
                ranks.push(g);
                next.push(WeakOrder {
                    ranks,
                    n_blocks: k + 1,
                });
            }
        }
        orders = next;
    }
    orders.sort_by_key(|o| o.key());
    orders.dedup();
    Ok(orders)
}

thread_local! {
    static ORDER_CACHE: std::cell::RefCell<std::collections::BTreeMap<usize, std::rc::Rc<Vec<WeakOrder>>>> =
        std::cell::RefCell::new(std::collections::BTreeMap::new());
}

/// Cached enumeration; entailment queries repeat the same context sizes.
pub fn weak_orders_cached(
    n_vars: usize,
    cap: usize,
) -> Result<std::rc::Rc<Vec<WeakOrder>>, ContextTooLarge> {
    if n_vars > cap {
        return Err(ContextTooLarge { size: n_vars, cap });
    }
    ORDER_CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if let Some(v) = c.get(&n_vars) {
            return Ok(v.clone());
        }
        let v = std::rc::Rc::new(enumerate_weak_orders(n_vars, cap)?);
        c.insert(n_vars, v.clone());
        Ok(v)
    })
}

/// Decide `hyp => goal` over an `n_vars` cube context. `Ok(None)` means
/// valid; `Ok(Some(w))` returns the least refuting weak order.
pub fn tope_entails(
    n_vars: usize,
    hyp: &Tope<usize>,
    goal: &Tope<usize>,
    cap: usize,
) -> Result<Option<WeakOrder>, ContextTooLarge> {
    for o in weak_orders_cached(n_vars, cap)?.iter() {
        if o.eval(hyp) && !o.eval(goal) {
            return Ok(Some(o.clone()));
        }
    }
    Ok(None)
}

/// True iff some weak order satisfies the formula.
pub fn satisfiable(
    n_vars: usize,
    phi: &Tope<usize>,
    cap: usize,
) -> Result<bool, ContextTooLarge> {
    Ok(tope_entails(n_vars, phi, &Tope::Bot, cap)?.is_some())
}

/// A conjunction of atoms, used as one disjunct of a DNF.
pub type Conj = Vec<Tope<usize>>;

/// Disjunctive normal form: a list of atom conjunctions. Bot disjuncts are
/// dropped; an empty outer list means Bot, an empty conjunction means Top.
pub fn dnf(phi: &Tope<usize>) -> Vec<Conj> {
    match phi {
        Tope::Top => vec![Vec::new()],
        Tope::Bot => Vec::new(),
        Tope::Le(..) | Tope::Eq(..) => vec![vec![phi.clone()]],
        Tope::Or(a, b) => {
            let mut out = dnf(a);
            out.extend(dnf(b));
            out
        }
        Tope::And(a, b) => {
            let da = dnf(a);
            let db = dnf(b);
            let mut out = Vec::new();
            for ca in &da {
                for cb in &db {
                    let mut c = ca.clone();
                    c.extend(cb.iter().cloned());
                    out.push(c);
                }
            }
            out
        }
    }
}

/// Evaluate a tope at a rational assignment `point[i] = (num, den)` of the
/// context variables into `[0,1]`. This is the independent sampling oracle:
/// a sample satisfying `hyp` but not `goal` soundly refutes entailment.
pub fn point_sample_check(
    n_vars: usize,
    hyp: &Tope<usize>,
    goal: &Tope<usize>,
    samples: &[Vec<(u32, u32)>],
) -> bool {
    for point in samples {
        assert_eq!(point.len(), n_vars, "sample arity mismatch");
        if eval_at_point(hyp, point) && !eval_at_point(goal, point) {
            return false;
        }
    }
    true
}

fn rational(i: &Interval<usize>, point: &[(u32, u32)]) -> (u64, u64) {
    match i {
        Interval::Zero => (0, 1),
        Interval::One => (1, 1),
        Interval::Var(v) => {
            let (n, d) = point[*v];
            (n as u64, d as u64)
        }
    }
}

/// Evaluate a tope at a rational point by cross-multiplication.
pub fn eval_at_point(phi: &Tope<usize>, point: &[(u32, u32)]) -> bool {
    match phi {
        Tope::Top => true,
        Tope::Bot => false,
        Tope::Le(a, b) => {
            let (an, ad) = rational(a, point);
            let (bn, bd) = rational(b, point);
            an * bd <= bn * ad
        }
        Tope::Eq(a, b) => {
            let (an, ad) = rational(a, point);
            let (bn, bd) = rational(b, point);
            an * bd == bn * ad
        }
        Tope::And(a, b) => eval_at_point(a, point) && eval_at_point(b, point),
        Tope::Or(a, b) => eval_at_point(a, point) || eval_at_point(b, point),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> Interval<usize> {
        Interval::Var(i)
    }

    fn le(a: Interval<usize>, b: Interval<usize>) -> Tope<usize> {
        Tope::Le(a, b)
    }

    fn eq(a: Interval<usize>, b: Interval<usize>) -> Tope<usize> {
        Tope::Eq(a, b)
    }

    /// Independent counting oracle: enumerate all score assignments of the
    /// variables into `{0, ..., n+1}` (score 0 means "= 0", the max score
    /// means "= 1"), canonicalize each induced weak order by its full
    /// pairwise-comparison matrix, and count distinct matrices.
    fn brute_force_count(n: usize) -> usize {
        use std::collections::BTreeSet;
        let levels = n + 2; // 0, up to n middle levels, 1
        let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
        let total = levels.pow(n as u32);
        for mut code in 0..total {
            let mut scores = Vec::with_capacity(n + 2);
            scores.push(0usize); // endpoint 0
            for _ in 0..n {
                scores.push(code % levels);
                code /= levels;
            }
            scores.push(levels - 1); // endpoint 1
            // signature: pairwise comparisons over all carrier elements
            let mut sig = Vec::new();
            for i in 0..scores.len() {
                for j in 0..scores.len() {
                    sig.push(match scores[i].cmp(&scores[j]) {
                        std::cmp::Ordering::Less => 0u8,
                        std::cmp::Ordering::Equal => 1,
                        std::cmp::Ordering::Greater => 2,
                    });
                }
            }
            seen.insert(sig);
        }
        seen.len()
    }

    #[test]
    fn weak_order_counts_match_brute_force() {
        // 0 variables: just {0} < {1}.
        assert_eq!(enumerate_weak_orders(0, 8).unwrap().len(), 1);
        // 1 variable: t = 0, 0 < t < 1, t = 1.
        assert_eq!(enumerate_weak_orders(1, 8).unwrap().len(), 3);
        for n in 0..=4 {
            let ours = enumerate_weak_orders(n, 8).unwrap().len();
            assert_eq!(ours, brute_force_count(n), "count mismatch at n={n}");
        }
    }

    #[test]
    fn two_variable_count_is_frozen() {
        // Frozen from the brute-force oracle above.
        assert_eq!(enumerate_weak_orders(2, 8).unwrap().len(), 11);
        assert_eq!(brute_force_count(2), 11);
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        for n in 0..=4 {
            let orders = enumerate_weak_orders(n, 8).unwrap();
            let mut keys: Vec<_> = orders.iter().map(|o| o.key()).collect();
            keys.sort();
            let len = keys.len();
            keys.dedup();
            assert_eq!(keys.len(), len);
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(enumerate_weak_orders(9, 8).is_err());
        assert!(enumerate_weak_orders(3, 2).is_err());
    }

    #[test]
    fn eval_on_blocks() {
        // order {0} < {t} < {1}
        let o = WeakOrder {
            ranks: vec![1],
            n_blocks: 3,
        };
        assert!(!o.eval(&eq(v(0), Interval::Zero)));
        assert!(o.eval(&Tope::Top));
        // order {0,s} < {t,1}
        let o = WeakOrder {
            ranks: vec![0, 1],
            n_blocks: 2,
        };
        assert!(o.eval(&Tope::and(le(v(0), v(1)), eq(v(1), Interval::One))));
    }

    #[test]
    fn transitivity_and_antisymmetry() {
        let hyp = Tope::and(le(v(0), v(1)), le(v(1), v(2)));
        assert_eq!(tope_entails(3, &hyp, &le(v(0), v(2)), 8).unwrap(), None);
        let hyp = Tope::and(le(v(0), v(1)), le(v(1), v(0)));
        assert_eq!(tope_entails(2, &hyp, &eq(v(0), v(1)), 8).unwrap(), None);
    }

    #[test]
    fn least_counter_order_for_one_sided_le() {
        // s <= t does not entail t <= s; least refutation is {0,s} < {t,1}.
        let w = tope_entails(2, &le(v(0), v(1)), &le(v(1), v(0)), 8)
            .unwrap()
            .expect("refutable");
        let names = vec!["s".to_string(), "t".to_string()];
        assert_eq!(w.render(&names), "{0,s} < {t,1}");
        // Point-sampling oracle confirms at s=0, t=1.
        assert!(!point_sample_check(
            2,
            &le(v(0), v(1)),
            &le(v(1), v(0)),
            &[vec![(0, 1), (1, 1)]],
        ));
    }

    #[test]
    fn totality_is_valid() {
        let goal = Tope::or(le(v(0), v(1)), le(v(1), v(0)));
        assert_eq!(tope_entails(2, &Tope::Top, &goal, 8).unwrap(), None);
    }

    #[test]
    fn endpoints_are_distinct() {
        assert!(tope_entails(0, &Tope::Top, &eq(Interval::Zero, Interval::One), 8)
            .unwrap()
            .is_some());
        // A degenerate hypothesis is unsatisfiable, so it entails anything.
        let degenerate = eq(Interval::Zero, Interval::One);
        assert_eq!(tope_entails(1, &degenerate, &Tope::Bot, 8).unwrap(), None);
    }

    #[test]
    fn empty_sample_list_is_vacuously_true() {
        assert!(point_sample_check(1, &Tope::Top, &Tope::Bot, &[]));
    }

    #[test]
    fn dnf_round_trips_semantics() {
        let phi = Tope::and(
            Tope::or(le(v(0), v(1)), eq(v(1), Interval::One)),
            Tope::or(eq(v(0), Interval::Zero), le(v(1), v(0))),
        );
        let d = dnf(&phi);
        for o in enumerate_weak_orders(2, 8).unwrap() {
            let direct = o.eval(&phi);
            let via_dnf = d
                .iter()
                .any(|c| c.iter().all(|a| o.eval(a)));
            assert_eq!(direct, via_dnf);
        }
    }
}
