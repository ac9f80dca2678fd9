use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::module::{
    eventual_division_module, is_vn_power_torsion, CyclicModulePresentation, ModuleDivisionWitness, TorsionResult,
};
use crate::graded::ResidueGradedPoly;
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    NotRealizable,
    NoObstructionFound,
    OutsideScope,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::NotRealizable => "NotRealizable",
            Verdict::NoObstructionFound => "NoObstructionFound",
            Verdict::OutsideScope => "OutsideScope",
        }
    }
}

/// The three obstructions, in the order they are tried.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rule {
    /// Torsion for `v_0, …, v_{n−1}` plus eventual `v_n`-division by
    /// `v_{n+1}` forces `v_n`-power-torsion.
    LocalizationEventualDivision,
    /// Over a tower that is not totally ramified, realizable modules are
    /// `v_n`-power-torsion for every `n`.
    UnramifiedDissonance,
    /// A nonzero finitely presented module is not `v_n`-power-torsion for
    /// some `n`, which contradicts the previous rule.
    FinitePresentation,
}

impl Rule {
    pub fn code(self) -> &'static str {
        match self {
            Rule::LocalizationEventualDivision => "R1",
            Rule::UnramifiedDissonance => "R2",
            Rule::FinitePresentation => "R3",
        }
    }

    pub fn lemma(self) -> &'static str {
        match self {
            Rule::LocalizationEventualDivision => "localization and eventual division",
            Rule::UnramifiedDissonance => "unramified dissonance",
            Rule::FinitePresentation => "finite presentation and power-torsion",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub k_max: u64,
    pub m_max: u64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { k_max: 20, m_max: 32 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionStatus {
    Torsion(u64),
    /// Not torsion up to `k_max`; `proven` is false when a truncated
    /// Gröbner basis was involved.
    Unresolved { k_max: u64, proven: bool },
}

impl TorsionStatus {
    fn is_torsion(self) -> bool {
        matches!(self, TorsionStatus::Torsion(_))
    }

    fn is_proven_nontorsion(self) -> bool {
        matches!(self, TorsionStatus::Unresolved { proven: true, .. })
    }
}

/// `v_n^k · 1` has the given nonzero normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormWitness {
    pub n: usize,
    pub k: u64,
    pub normal_form: ResidueGradedPoly,
}

/// An element that is not `v_n`-power-torsion (`v_0 = p`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonTorsionWitness {
    pub n: usize,
    pub element: ResidueGradedPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionCertificate {
    pub verdict: Verdict,
    pub rules_fired: Vec<Rule>,
    pub bounds: SearchBounds,
    pub torsion_exponents: BTreeMap<usize, TorsionStatus>,
    pub division_witnesses: Vec<ModuleDivisionWitness>,
    pub nonzero_normal_forms: Vec<NormalFormWitness>,
    pub non_torsion: Vec<NonTorsionWitness>,
    /// False when some "not torsion" answer rests on a truncated basis.
    pub membership_proven: bool,
    pub log: Vec<String>,
}

impl ObstructionCertificate {
    fn new(bounds: SearchBounds) -> Self {
        ObstructionCertificate {
            verdict: Verdict::NoObstructionFound,
            rules_fired: Vec::new(),
            bounds,
            torsion_exponents: BTreeMap::new(),
            division_witnesses: Vec::new(),
            nonzero_normal_forms: Vec::new(),
            non_torsion: Vec::new(),
            membership_proven: true,
            log: Vec::new(),
        }
    }

    /// Re-run the operation behind every witness and compare.
    pub fn replay(&self, module: &CyclicModulePresentation) -> Result<bool> {
        for w in &self.division_witnesses {
            if eventual_division_module(module, w.r, w.s, self.bounds.m_max)?.as_ref() != Some(w) {
                return Ok(false);
            }
        }
        let mut scans: BTreeMap<usize, TorsionResult> = BTreeMap::new();
        for (&n, status) in &self.torsion_exponents {
            let result = is_vn_power_torsion(module, n, self.bounds.k_max)?;
            if status_of(&result) != *status {
                return Ok(false);
            }
            scans.insert(n, result);
        }
        for w in &self.nonzero_normal_forms {
            let ok = match scans.get(&w.n) {
                Some(TorsionResult::NoUpTo { normal_forms, .. }) => {
                    w.k >= 1 && normal_forms.get(w.k as usize - 1) == Some(&w.normal_form)
                }
                _ => false,
            };
            if !ok {
                return Ok(false);
            }
        }
        for w in &self.non_torsion {
            match scans.get(&w.n) {
                Some(TorsionResult::NoUpTo { proven: true, .. }) => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }
}

fn status_of(result: &TorsionResult) -> TorsionStatus {
    match result {
        TorsionResult::Yes { k } => TorsionStatus::Torsion(*k),
        TorsionResult::NoUpTo { k_max, proven, .. } => TorsionStatus::Unresolved {
            k_max: *k_max,
            proven: *proven,
        },
    }
}

fn push_normal_forms(cert: &mut ObstructionCertificate, n: usize, scan: &TorsionResult) {
    if cert.nonzero_normal_forms.iter().any(|w| w.n == n) {
        return;
    }
    if let TorsionResult::NoUpTo { normal_forms, .. } = scan {
        for (i, nf) in normal_forms.iter().enumerate() {
            cert.nonzero_normal_forms.push(NormalFormWitness {
                n,
                k: i as u64 + 1,
                normal_form: nf.clone(),
            });
        }
    }
}

/// Scan `p, v_1, …, v_N` for power-torsion and try the three obstructions.
pub fn realizability_obstruction(
    module: &CyclicModulePresentation,
    bounds: SearchBounds,
) -> Result<ObstructionCertificate> {
    let mut cert = ObstructionCertificate::new(bounds);
    let one = ResidueGradedPoly::one(&module.residue_ring());
    if module.is_zero() {
        cert.log.push("the ideal contains a unit, so the module is zero".into());
        return Ok(cert);
    }
    let nontr = module.is_non_totally_ramified_context();

    let p_scan = is_vn_power_torsion(module, 0, bounds.k_max)?;
    cert.torsion_exponents.insert(0, status_of(&p_scan));

    if !module.contains_pi() {
        if nontr && module.contains_p().is_none() {
            cert.log.push("the ideal has no nonzero constant, so 1 is not p-power-torsion".into());
            cert.non_torsion.push(NonTorsionWitness { n: 0, element: one });
            cert.rules_fired.push(Rule::UnramifiedDissonance);
            cert.verdict = Verdict::NotRealizable;
        } else {
            cert.log.push(match module.contains_p() {
                Some(a) => format!("p^{a} is the least power of p in the ideal and the uniformizer is not; torsion decisions need it"),
                None => "the ideal contains no power of p".into(),
            });
            cert.verdict = Verdict::OutsideScope;
        }
        return Ok(cert);
    }

    let mut scans: Vec<TorsionResult> = alloc::vec![p_scan];
    for n in 1..=module.n() {
        let scan = is_vn_power_torsion(module, n, bounds.k_max)?;
        let status = status_of(&scan);
        cert.log.push(match status {
            TorsionStatus::Torsion(k) => format!("v{n}^{k} kills the generator"),
            TorsionStatus::Unresolved { k_max, proven: true } => {
                format!("v{n}^k is nonzero for k <= {k_max}")
            }
            TorsionStatus::Unresolved { k_max, proven: false } => {
                format!("v{n}^k not shown to vanish for k <= {k_max}; membership not proven")
            }
        });
        if let TorsionStatus::Unresolved { proven: false, .. } = status {
            cert.membership_proven = false;
        }
        cert.torsion_exponents.insert(n, status);
        scans.push(scan);
    }
    let status = |n: usize| status_of(&scans[n]);

    // R1
    for n in 1..module.n() {
        if !(0..n).all(|i| status(i).is_torsion()) || !status(n).is_proven_nontorsion() {
            continue;
        }
        if let Some(w) = eventual_division_module(module, n + 1, n, bounds.m_max)? {
            cert.log.push(format!(
                "v{} acts with eventual v{n}-division at m = {}, yet v{n} is not torsion up to the bound",
                n + 1,
                w.m
            ));
            cert.division_witnesses.push(w);
            push_normal_forms(&mut cert, n, &scans[n]);
            cert.rules_fired.push(Rule::LocalizationEventualDivision);
            break;
        }
    }

    if nontr {
        // R2
        if let Some(n) = (0..scans.len()).find(|&n| status(n).is_proven_nontorsion()) {
            cert.log.push(format!("the tower is not totally ramified and v{n} is not power-torsion"));
            cert.non_torsion.push(NonTorsionWitness { n, element: one.clone() });
            push_normal_forms(&mut cert, n, &scans[n]);
            cert.rules_fired.push(Rule::UnramifiedDissonance);
        }
        // R3
        if module.finitely_presented() && (0..scans.len()).all(|n| status(n).is_torsion()) {
            cert.log.push("a nonzero finitely presented module that is torsion for every scanned v_n".into());
            cert.rules_fired.push(Rule::FinitePresentation);
        }
    }

    if !cert.rules_fired.is_empty() {
        cert.verdict = Verdict::NotRealizable;
    } else {
        cert.log.push("no rule applies within the search bounds".into());
    }
    Ok(cert)
}

