//! Static reversibility analysis: clash detection, rule connectedness,
//! reversible-rule and reversible-system verdicts, arity facts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::config::Equation;
use crate::name::{Name, Symbol};
use crate::system::{Rule, System};
use crate::term::Term;

/// The contractum pattern of a rule over fresh slot names: firing
/// `alpha(x...) >< beta(y...)` with the slot names as arguments and the
/// rule's own bound names kept as-is.
#[derive(Clone, Debug)]
pub struct ContractumPattern {
    /// Fresh slot names, left slots then right slots.
    pub slot_names: Vec<Name>,
    pub bound_names: Vec<Name>,
    pub equations: Vec<Equation>,
}

/// Builds the contractum pattern with machine slot names chosen above any
/// machine name appearing in the rule.
pub fn divide_pattern(rule: &Rule) -> ContractumPattern {
    let mut base = 0u64;
    for p in rule.patterns() {
        p.visit_names(&mut |n| {
            if let Name::Gen(g) = n {
                base = base.max(g + 1);
            }
        });
    }
    let slot_names: Vec<Name> = (0..rule.arity())
        .map(|i| Name::Gen(base + i as u64))
        .collect();
    let equations = rule
        .patterns()
        .enumerate()
        .map(|(i, p)| Equation(Term::Name(slot_names[i].clone()), p.clone()))
        .collect();
    ContractumPattern {
        slot_names,
        bound_names: rule.bound_names(),
        equations,
    }
}

/// A rule is connected when the contractum pattern cannot be split into
/// two non-empty multisets sharing no name. Equivalently, the graph whose
/// vertices are the contractum equations, with edges between equations
/// sharing a name, has at most one connected component. The empty
/// contractum is connected (it cannot be split into two non-empty parts).
pub fn is_connected(rule: &Rule) -> bool {
    let pat = divide_pattern(rule);
    let n = pat.equations.len();
    if n <= 1 {
        return true;
    }
    let mut uf = UnionFind::new(n);
    let mut by_name: BTreeMap<Name, usize> = BTreeMap::new();
    for (i, eq) in pat.equations.iter().enumerate() {
        let mut names = Vec::new();
        eq.visit_names(&mut |nm| names.push(nm.clone()));
        for nm in names {
            match by_name.get(&nm) {
                Some(&j) => {
                    uf.union(i, j);
                }
                None => {
                    by_name.insert(nm, i);
                }
            }
        }
    }
    let root = uf.find(0);
    (1..n).all(|i| uf.find(i) == root)
}

/// Two different active pairs with equal, non-empty contractum multisets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClashWitness {
    pub pair1: Equation,
    pub pair2: Equation,
    /// The shared contractum, instantiated for `pair1`.
    pub contractum: Vec<Equation>,
}

impl fmt::Display for ClashWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eqs: Vec<String> = self.contractum.iter().map(|e| e.to_string()).collect();
        write!(
            f,
            "{}  vs  {}  sharing {{ {} }}",
            self.pair1,
            self.pair2,
            eqs.join(", ")
        )
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Node universe for the clash search: one node per bound name of each
/// instance.
struct ClashSearch<'a> {
    r1: &'a Rule,
    r2: &'a Rule,
    b1: Vec<Name>,
    b2: Vec<Name>,
    k: usize,
    /// Both instances belong to the same rule. They then share one fresh
    /// draw of the rule's bound names: pattern sides compare literally
    /// and arguments may not contain any of the shared fresh names (no
    /// crossing orientation).
    self_pair: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SlotVal {
    /// Slot takes a fresh argument name, identified across the two
    /// instances by the rule-1 slot index.
    Fresh(usize),
    /// Slot is forced to the instantiated pattern of the other instance's
    /// matched equation (crossing orientation).
    Forced,
}

impl<'a> ClashSearch<'a> {
    fn pattern1(&self, i: usize) -> &Term {
        self.r1.patterns().nth(i).expect("slot in range")
    }

    fn pattern2(&self, j: usize) -> &Term {
        self.r2.patterns().nth(j).expect("slot in range")
    }

    fn node1(&self, n: &Name) -> usize {
        self.b1.iter().position(|m| m == n).expect("bound name")
    }

    fn node2(&self, n: &Name) -> usize {
        self.b1.len() + self.b2.iter().position(|m| m == n).expect("bound name")
    }

    /// Structural unification of two patterns, joining bound-name nodes.
    /// For a self-pair the shared draw makes names rigid: leaves must be
    /// literally equal.
    fn unify(&self, p1: &Term, p2: &Term, uf: &mut UnionFind) -> bool {
        match (p1, p2) {
            (Term::Name(a), Term::Name(b)) => {
                if self.self_pair && a != b {
                    return false;
                }
                uf.union(self.node1(a), self.node2(b));
                true
            }
            (Term::Agent(s1, a1), Term::Agent(s2, a2)) => {
                s1 == s2
                    && a1.len() == a2.len()
                    && a1.iter().zip(a2).all(|(x, y)| self.unify(x, y, uf))
            }
            _ => false,
        }
    }

    fn try_solution(&self, pi: &[usize], crossing_mask: u32) -> Option<ClashWitness> {
        let total = self.b1.len() + self.b2.len();
        let mut uf = UnionFind::new(total);
        let mut forced1: Vec<Option<usize>> = vec![None; self.k]; // slot1 i -> j it was forced by
        let mut forced2: Vec<Option<usize>> = vec![None; self.k];
        for (j, &i) in pi.iter().enumerate() {
            if crossing_mask & (1 << j) == 0 {
                if !self.unify(self.pattern1(i), self.pattern2(j), &mut uf) {
                    return None;
                }
            } else {
                forced1[i] = Some(j);
                forced2[j] = Some(i);
            }
        }

        // Injectivity within each pool: a class may not merge two bound
        // names of the same instance.
        let mut class_members: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for n in 0..total {
            let root = uf.find(n);
            let entry = class_members.entry(root).or_default();
            if n < self.b1.len() {
                entry.0.push(n);
            } else {
                entry.1.push(n);
            }
        }
        for (pool1, pool2) in class_members.values() {
            if pool1.len() > 1 || pool2.len() > 1 {
                return None;
            }
        }

        // Freshness: a forced argument of instance 1 is a pattern of rule
        // 2; none of its names may be identified with instance 1's own
        // pool (arguments never contain the instance's fresh names), and
        // symmetrically.
        let class_has_pool1 = |uf: &mut UnionFind, node: usize| -> bool {
            let root = uf.find(node);
            (0..self.b1.len()).any(|n| uf.find(n) == root)
        };
        let class_has_pool2 = |uf: &mut UnionFind, node: usize| -> bool {
            let root = uf.find(node);
            (self.b1.len()..total).any(|n| uf.find(n) == root)
        };
        for (i, forced_by) in forced1.iter().enumerate() {
            if let Some(j) = forced_by {
                let mut ok = true;
                self.pattern2(*j).visit_names(&mut |n| {
                    if class_has_pool1(&mut uf, self.node2(n)) {
                        ok = false;
                    }
                });
                self.pattern1(i).visit_names(&mut |n| {
                    if class_has_pool2(&mut uf, self.node1(n)) {
                        ok = false;
                    }
                });
                if !ok {
                    return None;
                }
            }
        }

        // Assign values: every bound-name class gets a distinct fresh
        // name, every free slot pair gets a distinct fresh argument name.
        let mut class_value: BTreeMap<usize, Name> = BTreeMap::new();
        let mut counter = 0usize;
        for n in 0..total {
            let root = uf.find(n);
            class_value.entry(root).or_insert_with(|| {
                let v = Name::User(format!("w{counter}"));
                counter += 1;
                v
            });
        }
        let slot_vals1: Vec<SlotVal> = (0..self.k)
            .map(|i| {
                if forced1[i].is_some() {
                    SlotVal::Forced
                } else {
                    SlotVal::Fresh(i)
                }
            })
            .collect();

        let instantiate1 = |uf: &mut UnionFind, t: &Term| -> Term {
            self.instantiate(t, true, uf, &class_value)
        };
        let instantiate2 = |uf: &mut UnionFind, t: &Term| -> Term {
            self.instantiate(t, false, uf, &class_value)
        };

        let arg_name = |i: usize| Name::User(format!("t{i}"));
        let mut args1: Vec<Term> = Vec::with_capacity(self.k);
        for i in 0..self.k {
            match slot_vals1[i] {
                SlotVal::Fresh(idx) => args1.push(Term::Name(arg_name(idx))),
                SlotVal::Forced => {
                    let j = forced1[i].expect("forced");
                    args1.push(instantiate2(&mut uf, self.pattern2(j)));
                }
            }
        }
        let mut args2: Vec<Term> = Vec::with_capacity(self.k);
        for j in 0..self.k {
            match forced2[j] {
                Some(i) => args2.push(instantiate1(&mut uf, self.pattern1(i))),
                None => {
                    // shares the fresh name of its rule-1 partner slot
                    args2.push(Term::Name(arg_name(pi[j])));
                }
            }
        }

        let m1 = self.r1.left_patterns.len();
        let pair1 = Equation(
            Term::Agent(self.r1.left.clone(), args1[..m1].to_vec()),
            Term::Agent(self.r1.right.clone(), args1[m1..].to_vec()),
        );
        let m2 = self.r2.left_patterns.len();
        let pair2 = Equation(
            Term::Agent(self.r2.left.clone(), args2[..m2].to_vec()),
            Term::Agent(self.r2.right.clone(), args2[m2..].to_vec()),
        );
        // The pairs must induce genuinely different peaks. Comparing them
        // as single-equation configurations keeps the shared argument
        // names rigid (they are the common external wires) while the
        // instantiation names, which occur twice inside one pair, stay
        // renamable: two pairs differing only in the fresh draw are the
        // same peak.
        let peak1 = crate::config::Configuration::new(Vec::new(), vec![pair1.clone()]);
        let peak2 = crate::config::Configuration::new(Vec::new(), vec![pair2.clone()]);
        if crate::canon::congruent(&peak1, &peak2) {
            return None;
        }
        let contractum = (0..self.k)
            .map(|i| Equation(args1[i].clone(), instantiate1(&mut uf, self.pattern1(i))))
            .collect();
        Some(ClashWitness {
            pair1,
            pair2,
            contractum,
        })
    }

    fn instantiate(
        &self,
        t: &Term,
        pool1: bool,
        uf: &mut UnionFind,
        class_value: &BTreeMap<usize, Name>,
    ) -> Term {
        match t {
            Term::Name(n) => {
                let node = if pool1 { self.node1(n) } else { self.node2(n) };
                Term::Name(class_value[&uf.find(node)].clone())
            }
            Term::Agent(sym, args) => Term::Agent(
                sym.clone(),
                args.iter()
                    .map(|a| self.instantiate(a, pool1, uf, class_value))
                    .collect(),
            ),
        }
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    fn rec(cur: &mut Vec<usize>, at: usize, out: &mut Vec<Vec<usize>>) {
        if at == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in at..cur.len() {
            cur.swap(at, i);
            rec(cur, at + 1, out);
            cur.swap(at, i);
        }
    }
    rec(&mut cur, 0, &mut out);
    // Minimal-displacement first: identity, then single swaps on the
    // earliest positions, and so on. Keeps the reported witness the most
    // recognizable one when several exist.
    out.sort_by_key(|p| {
        let displaced: Vec<usize> = p
            .iter()
            .enumerate()
            .filter(|(j, &i)| i != *j)
            .map(|(j, _)| j)
            .collect();
        (displaced.len(), displaced, p.clone())
    });
    out
}

/// True when the two rules are the same rule up to renaming of their
/// bound wiring names and exchanging the two sides.
pub fn alpha_equivalent(r1: &Rule, r2: &Rule) -> bool {
    fn oriented(r1: &Rule, r2: &Rule) -> bool {
        if r1.left != r2.left
            || r1.right != r2.right
            || r1.left_patterns.len() != r2.left_patterns.len()
            || r1.right_patterns.len() != r2.right_patterns.len()
        {
            return false;
        }
        let cfg = |r: &Rule| {
            let pat = divide_pattern(r);
            crate::config::Configuration::new(
                pat.slot_names.iter().map(|n| Term::Name(n.clone())).collect(),
                pat.equations,
            )
        };
        crate::canon::congruent(&cfg(r1), &cfg(r2))
    }
    oriented(r1, r2) || oriented(&r1.flipped(), r2)
}

/// Decides whether instances of `r1` and `r2` can form two different
/// active pairs with equal non-empty contractum multisets, and returns a
/// most-general witness if so.
///
/// The search runs over pairings of the two contractum templates with a
/// per-equation orientation: the aligned orientation identifies pattern
/// with pattern (bound names unified across the instances, injectively
/// per instance) and argument slot with argument slot; the crossing
/// orientation forces an argument to equal the other instance's
/// instantiated pattern. Arguments never contain the instance's own
/// fresh names; two instances of the same rule share one fresh draw, so
/// for self-pairs patterns compare literally and crossing is impossible.
/// Unconstrained slots are filled with distinct fresh names; a solution
/// is a witness when the two induced pairs are different peaks up to
/// congruence.
pub fn clash_witness(r1: &Rule, r2: &Rule) -> Option<ClashWitness> {
    let k = r1.arity();
    if k != r2.arity() || k == 0 {
        return None;
    }
    let self_pair = alpha_equivalent(r1, r2);
    let (r1, r2) = if self_pair { (r1, r1) } else { (r1, r2) };
    let search = ClashSearch {
        r1,
        r2,
        b1: r1.bound_names(),
        b2: r2.bound_names(),
        k,
        self_pair,
    };
    let perms = permutations(k);
    let masks: Vec<u32> = if self_pair {
        vec![0]
    } else {
        let mut m: Vec<u32> = (0..(1u32 << k)).collect();
        m.sort_by_key(|m| (m.count_ones(), *m));
        m
    };
    for mask in masks {
        for pi in &perms {
            if let Some(w) = search.try_solution(pi, mask) {
                return Some(w);
            }
        }
    }
    None
}

/// A rule is reversible when it is connected and does not clash with
/// itself.
pub fn is_reversible_rule(rule: &Rule) -> bool {
    is_connected(rule) && clash_witness(rule, rule).is_none()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Reversible,
    Irreversible,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Reversible => "reversible",
            Verdict::Irreversible => "irreversible",
        })
    }
}

#[derive(Clone, Debug)]
pub struct RuleReport {
    pub rule_index: usize,
    pub rule: String,
    pub left: Symbol,
    pub right: Symbol,
    pub arity: usize,
    pub connected: bool,
    pub self_clash: Option<ClashWitness>,
}

#[derive(Clone, Debug)]
pub struct PairClash {
    pub rule1: usize,
    pub rule2: usize,
    pub witness: ClashWitness,
}

/// Full reversibility analysis of a system: connectedness and self-clash
/// per rule, clash per unordered rule pair, arity table, verdict.
#[derive(Clone, Debug)]
pub struct ReversibilityReport {
    pub arity_table: BTreeMap<Symbol, usize>,
    pub rules: Vec<RuleReport>,
    pub pair_clashes: Vec<PairClash>,
    pub verdict: Verdict,
}

impl ReversibilityReport {
    /// All clash witnesses, self and cross, in rule order.
    pub fn all_clashes(&self) -> Vec<(usize, usize, &ClashWitness)> {
        let mut out: Vec<(usize, usize, &ClashWitness)> = self
            .rules
            .iter()
            .filter_map(|r| r.self_clash.as_ref().map(|w| (r.rule_index, r.rule_index, w)))
            .collect();
        out.extend(
            self.pair_clashes
                .iter()
                .map(|p| (p.rule1, p.rule2, &p.witness)),
        );
        out.sort_by_key(|(a, b, _)| (*a, *b));
        out
    }
}

/// Runs connectedness per rule and the clash decision per unordered rule
/// pair (self-pairs included). The empty rule set is reversible.
pub fn reversibility_report(sys: &System) -> ReversibilityReport {
    let rules: Vec<RuleReport> = sys
        .rules
        .iter()
        .enumerate()
        .map(|(i, r)| RuleReport {
            rule_index: i,
            rule: r.to_string(),
            left: r.left.clone(),
            right: r.right.clone(),
            arity: r.arity(),
            connected: is_connected(r),
            self_clash: clash_witness(r, r),
        })
        .collect();
    let mut pair_clashes = Vec::new();
    for i in 0..sys.rules.len() {
        for j in (i + 1)..sys.rules.len() {
            if let Some(w) = clash_witness(&sys.rules[i], &sys.rules[j]) {
                pair_clashes.push(PairClash {
                    rule1: i,
                    rule2: j,
                    witness: w,
                });
            }
        }
    }
    let reversible = rules.iter().all(|r| r.connected && r.self_clash.is_none())
        && pair_clashes.is_empty();
    ReversibilityReport {
        arity_table: sys.signature.clone(),
        rules,
        pair_clashes,
        verdict: if reversible {
            Verdict::Reversible
        } else {
            Verdict::Irreversible
        },
    }
}

/// True iff every rule is reversible and no two different rules have the
/// same positive arity. Equivalent to the reversibility verdict.
pub fn arity_characterization(sys: &System) -> bool {
    if !sys.rules.iter().all(is_reversible_rule) {
        return false;
    }
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for r in &sys.rules {
        let a = r.arity();
        if a >= 1 && !seen.insert(a) {
            return false;
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompletenessReport {
    /// A rule exists for every unordered pair of signature symbols.
    pub complete: bool,
    /// Every agent has arity 0.
    pub trivial: bool,
    /// All agent arities are pairwise distinct.
    pub distinct_arities: bool,
}

pub fn completeness_check(sys: &System) -> CompletenessReport {
    let syms: Vec<&Symbol> = sys.signature.keys().collect();
    let mut complete = true;
    for (i, a) in syms.iter().enumerate() {
        for b in &syms[i..] {
            if sys.rule_for(a, b).is_none() {
                complete = false;
            }
        }
    }
    let trivial = sys.signature.values().all(|&a| a == 0);
    let arities: BTreeSet<usize> = sys.signature.values().copied().collect();
    let distinct_arities = arities.len() == sys.signature.len();
    CompletenessReport {
        complete,
        trivial,
        distinct_arities,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_system;

    fn rules_of(src: &str) -> Vec<Rule> {
        parse_system(src).unwrap().system.rules
    }

    fn gamma_anni() -> Rule {
        rules_of("agents { gamma/2 } rule gamma[x, y] >< gamma[y, x];").remove(0)
    }

    fn delta_anni() -> Rule {
        rules_of("agents { delta/2 } rule delta[x, y] >< delta[x, y];").remove(0)
    }

    fn duplication() -> Rule {
        rules_of(
            "agents { gamma/2, delta/2 } \
             rule gamma[delta(x1, x2), delta(y1, y2)] >< delta[gamma(x1, y1), gamma(x2, y2)];",
        )
        .remove(0)
    }

    fn eps_eps() -> Rule {
        rules_of("agents { eps/0 } rule eps[] >< eps[];").remove(0)
    }

    fn app_lam() -> Rule {
        rules_of("agents { app/2, lam/2 } rule app[x, y] >< lam[x, y];").remove(0)
    }

    #[test]
    fn divide_pattern_of_gamma_annihilation_crosses() {
        let pat = divide_pattern(&gamma_anni());
        let printed: Vec<String> = pat.equations.iter().map(|e| e.to_string()).collect();
        assert_eq!(printed, vec!["%0 = x", "%1 = y", "%2 = y", "%3 = x"]);
        assert_eq!(pat.bound_names.len(), 2);
    }

    #[test]
    fn divide_pattern_of_duplication_has_four_agent_equations() {
        let pat = divide_pattern(&duplication());
        assert_eq!(pat.equations.len(), 4);
        assert!(pat
            .equations
            .iter()
            .all(|e| matches!(e.1, Term::Agent(..))));
    }

    #[test]
    fn divide_pattern_of_eps_is_empty() {
        assert!(divide_pattern(&eps_eps()).equations.is_empty());
    }

    #[test]
    fn annihilations_are_disconnected_duplication_is_connected() {
        assert!(!is_connected(&gamma_anni()));
        assert!(!is_connected(&delta_anni()));
        assert!(is_connected(&duplication()));
        assert!(is_connected(&eps_eps()));
    }

    #[test]
    fn gamma_delta_annihilations_clash() {
        let w = clash_witness(&gamma_anni(), &delta_anni()).expect("clash");
        // both pairs use the same four argument names, differently wired
        assert!(w.pair1.to_string().starts_with("gamma("));
        assert!(w.pair2.to_string().starts_with("delta("));
        assert_eq!(w.contractum.len(), 4);
    }

    #[test]
    fn eps_does_not_clash_with_itself() {
        assert!(clash_witness(&eps_eps(), &eps_eps()).is_none());
    }

    #[test]
    fn app_lam_self_clash_matches_the_known_shape() {
        // @(t, u) = lam(v, w)  vs  @(v, u) = lam(t, w): the two @-terms
        // share their second argument, the two lam-terms share their
        // second argument, and the first arguments are exchanged.
        let w = clash_witness(&app_lam(), &app_lam()).expect("self-clash");
        let (Term::Agent(_, a1), Term::Agent(_, l1)) = (&w.pair1.0, &w.pair1.1) else {
            panic!("agent pair");
        };
        let (Term::Agent(_, a2), Term::Agent(_, l2)) = (&w.pair2.0, &w.pair2.1) else {
            panic!("agent pair");
        };
        assert_eq!(a1[1], a2[1]);
        assert_eq!(l1[1], l2[1]);
        assert_eq!(a1[0], l2[0]);
        assert_eq!(a2[0], l1[0]);
        assert_ne!(a1[0], a2[0]);
    }

    #[test]
    fn reversibility_of_individual_rules() {
        assert!(is_reversible_rule(&duplication()));
        assert!(!is_reversible_rule(&gamma_anni()));
        assert!(!is_reversible_rule(&app_lam()));
    }

    #[test]
    fn rev_demo_rule_is_reversible() {
        let r = rules_of("agents { alpha/2, beta/1, gamma/2 } rule alpha[x, y] >< beta[gamma(x, y)];")
            .remove(0);
        assert!(is_reversible_rule(&r));
    }

    #[test]
    fn two_nullary_rules_may_coexist_reversibly() {
        let sys = parse_system(
            "agents { eps/0, zed/0 } rule eps[] >< eps[]; rule zed[] >< zed[];",
        )
        .unwrap()
        .system;
        let report = reversibility_report(&sys);
        assert_eq!(report.verdict, Verdict::Reversible);
        assert!(arity_characterization(&sys));
    }

    #[test]
    fn distinct_rules_of_equal_positive_arity_clash() {
        // Equal positive arity forces a clash between different rules,
        // even when their patterns look nothing alike.
        assert!(clash_witness(&gamma_anni(), &duplication()).is_some());
        let d2 = rules_of("agents { gamma/2, delta/2 } rule gamma[x, y] >< delta[x, y];").remove(0);
        assert!(clash_witness(&gamma_anni(), &d2).is_some());
        // Different arities never clash.
        let erase = rules_of("agents { gamma/2, eps/0 } rule gamma[eps(), eps()] >< eps[];")
            .remove(0);
        assert!(clash_witness(&gamma_anni(), &erase).is_none());
    }

    #[test]
    fn completeness_of_small_systems() {
        let linlam = parse_system("agents { app/2, lam/2 } rule app[x, y] >< lam[x, y];")
            .unwrap()
            .system;
        let report = completeness_check(&linlam);
        assert!(!report.complete);

        let eps = parse_system("agents { eps/0 } rule eps[] >< eps[];")
            .unwrap()
            .system;
        let report = completeness_check(&eps);
        assert!(report.complete && report.trivial);
    }

    #[test]
    fn empty_system_is_reversible() {
        let sys = System::default();
        assert_eq!(reversibility_report(&sys).verdict, Verdict::Reversible);
    }
}
