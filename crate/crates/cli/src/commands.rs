use std::fmt::Write as _;

use qformlab::eisenstein::eisenstein3;
use qformlab::etaq::ligozat_check;
use qformlab::etasearch::{census_all, census_result, verify_remark_identities};
use qformlab::newforms::{verify_newform, EIGEN_PRECISION};
use qformlab::qseries::{eta_quotient_expansion, q_truncation, GRADE};
use qformlab::quadforms::{
    compare_tables, derive_all, derive_formula, load_tables, render_tables, rep_count_bruteforce, rep_count_formula,
};
use qformlab::spaces::{build_basis, verify_basis, DEFAULT_PRECISION, STURM_BOUND};
use qformlab::{DirichletChar, EisensteinSpec, EtaQuotient, QSeries, QuadForm, Rational};
use serde::Serialize;

use crate::{BasisAction, Common, Failure};

type Outcome = Result<(), Failure>;

impl Common {
    fn precision_or(&self, default: usize) -> usize {
        self.precision.unwrap_or(default)
    }

    /// Precision for commands that certify identities.
    fn identity_precision(&self) -> Result<usize, Failure> {
        let p = self.precision_or(DEFAULT_PRECISION);
        if p < STURM_BOUND + 1 {
            return Err(Failure::Usage(format!("precision must be at least {}", STURM_BOUND + 1)));
        }
        Ok(p)
    }

    /// Write the payload to `--emit` or stdout.
    fn emit(&self, text: &str) -> Outcome {
        match &self.emit {
            Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn emit_json<T: Serialize>(&self, value: &T) -> Outcome {
        let mut text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
        text.push('\n');
        self.emit(&text)
    }
}

#[derive(Serialize)]
struct SeriesOut<'a> {
    name: String,
    /// Exponents are multiples of this power of q.
    unit: &'a str,
    terms: Vec<(i64, Rational)>,
}

fn series_output(name: String, s: &QSeries<Rational>, grade: bool, common: &Common) -> Outcome {
    let integral = !grade && s.is_integral_q();
    let (unit, div) = if integral { ("q", GRADE) } else { ("q^(1/24)", 1) };
    if common.json {
        let terms = s.terms().map(|(e, c)| (e / div, c.clone())).collect();
        return common.emit_json(&SeriesOut { name, unit, terms });
    }
    let body = if integral { s.to_q_lines().expect("integral") } else { s.to_grade_lines() };
    common.emit(&body)
}

pub fn eta_expand(f: &EtaQuotient, grade: bool, common: &Common) -> Outcome {
    let s = eta_quotient_expansion(f, q_truncation(common.precision_or(DEFAULT_PRECISION)));
    series_output(f.to_string(), &s, grade, common)
}

pub fn eisenstein(spec: &EisensteinSpec, common: &Common) -> Outcome {
    let s = eisenstein3(spec, common.precision_or(DEFAULT_PRECISION));
    series_output(spec.to_string(), &s, false, common)
}

pub fn ligozat(f: &EtaQuotient, common: &Common) -> Outcome {
    let r = ligozat_check(f);
    if common.json {
        common.emit_json(&r)?;
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "quotient {f}");
        let _ = writeln!(out, "weight {}", r.weight);
        let _ = writeln!(out, "L1 {}\nL2 {}\nL4 {}", r.l1_ok, r.l2_ok, r.l4_ok);
        for (cusp, v) in &r.cusp_orders {
            let _ = writeln!(out, "order {cusp} {v}");
        }
        let _ = writeln!(out, "holomorphic {}\ncusp {}", r.is_holomorphic, r.is_cusp);
        match r.character {
            Some(chi) => {
                let _ = writeln!(out, "character {chi}");
            }
            None => out.push_str("character none\n"),
        }
        common.emit(&out)?;
    }
    if r.is_holomorphic {
        Ok(())
    } else {
        Err(Failure::Check(format!("{f} is not a holomorphic modular form of integer weight")))
    }
}

pub fn basis(action: BasisAction, chi: DirichletChar, common: &Common) -> Outcome {
    let basis = build_basis(chi)?;
    match action {
        BasisAction::Dump => {
            if common.json {
                let names: Vec<String> = basis.elements().iter().map(ToString::to_string).collect();
                common.emit_json(&names)
            } else {
                common.emit(&basis.dump())
            }
        }
        BasisAction::Verify => {
            let report = verify_basis(&basis, common.identity_precision()?);
            if common.json {
                common.emit_json(&report)?;
            } else {
                let mut out = String::new();
                for c in &report.cusp_checks {
                    let chi = c.character.map_or("none".to_string(), |x| x.to_string());
                    let _ = writeln!(out, "{} cusp={} character={chi} valuation={}", c.quotient, c.is_cusp, c.valuation);
                }
                let _ = writeln!(out, "rank {} of {}", report.rank, report.size);
                let _ = writeln!(out, "distinct valuations {}", report.distinct_valuations);
                let _ = writeln!(out, "{}", if report.passed() { "PASS" } else { "FAIL" });
                common.emit(&out)?;
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Failure::Check(format!("basis for {chi} failed verification")))
            }
        }
    }
}

#[derive(Serialize)]
struct RepCountOut {
    form: String,
    n: u64,
    oracle: Option<u64>,
    formula: Option<Rational>,
}

pub fn rep_count(form: &QuadForm, n: u64, oracle: bool, formula: bool, common: &Common) -> Outcome {
    let l = form.exponent_vector();
    if formula && l.is_none() {
        return Err(Failure::Usage(format!("no formula for {form}: needs six variables with coefficients 1, 2, 3, 6")));
    }
    let want_oracle = oracle || !formula;
    let want_formula = formula || (!oracle && l.is_some());
    let brute = want_oracle.then(|| rep_count_bruteforce(form, n));
    let derived = match l.filter(|_| want_formula) {
        Some(l) => Some(rep_count_formula(&derive_formula(l)?, n)?),
        None => None,
    };
    if common.json {
        common.emit_json(&RepCountOut { form: form.to_string(), n, oracle: brute, formula: derived.clone() })?;
    } else {
        let value = derived.clone().unwrap_or_else(|| Rational::from(brute.expect("one side computed") as i64));
        common.emit(&format!("{value}\n"))?;
    }
    match (brute, derived) {
        (Some(b), Some(f)) if Rational::from(b as i64) != f => {
            Err(Failure::Check(format!("oracle {b} and formula {f} disagree for {form} at n={n}")))
        }
        _ => Ok(()),
    }
}

pub fn derive_table(chi: Option<DirichletChar>, common: &Common) -> Outcome {
    if let Some(c) = chi.filter(|c| !DirichletChar::NEBENTYPES.contains(c)) {
        return Err(Failure::Usage(format!("no table for character {c}")));
    }
    let rows = derive_all(chi, common.identity_precision()?)?;
    if common.json {
        common.emit_json(&rows)
    } else {
        common.emit(&render_tables(&rows)?)
    }
}

pub fn verify_tables(common: &Common) -> Outcome {
    let derived = derive_all(None, common.identity_precision()?)?;
    let diffs = compare_tables(&derived, &load_tables()?)?;
    if common.json {
        common.emit_json(&diffs)?;
    } else {
        let mut out = String::new();
        for d in &diffs {
            let show = |x: &Option<Rational>| x.as_ref().map_or("-".to_string(), ToString::to_string);
            let _ = writeln!(
                out,
                "{} [{}] {}: table {} derived {}",
                d.l,
                d.character,
                d.column,
                show(&d.fixture),
                show(&d.derived)
            );
        }
        let _ = writeln!(out, "{} rows compared, {} discrepancies", derived.len(), diffs.len());
        common.emit(&out)?;
    }
    if diffs.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} table cells differ", diffs.len())))
    }
}

pub fn verify_newforms(index: Option<usize>, common: &Common) -> Outcome {
    let precision = common.precision_or(EIGEN_PRECISION);
    if precision < STURM_BOUND + 2 {
        return Err(Failure::Usage(format!("precision must be at least {}", STURM_BOUND + 2)));
    }
    let indices: Vec<usize> = match index {
        Some(i) if (1..=5).contains(&i) => vec![i],
        Some(i) => return Err(Failure::Usage(format!("newform index {i} out of range 1..=5"))),
        None => (1..=5).collect(),
    };
    let reports = indices.iter().map(|&i| verify_newform(i, precision)).collect::<Result<Vec<_>, _>>()?;
    if common.json {
        common.emit_json(&reports)?;
    } else {
        let mut out = String::new();
        for r in &reports {
            let status = if r.passed() { "PASS" } else { "FAIL" };
            let _ = write!(
                out,
                "f{} character {} field {}: {status} ({} multiplicative, {} prime-square checks",
                r.index, r.character, r.field, r.eigen.multiplicative_checks, r.eigen.hecke_checks
            );
            out.push_str(if r.solve_back_matches { ", printed combo recovered)\n" } else { ", printed combo not recovered)\n" });
            if let Some(first) = r.eigen.failures.first() {
                let _ = writeln!(out, "  first failure: {first}");
            }
            if let Some(fb) = &r.fallback {
                let combo: Vec<String> = fb.combo.iter().map(|c| format!("[{c}]")).collect();
                let _ = writeln!(out, "  re-derived from T_{}: {}", fb.prime, combo.join(" "));
            }
        }
        common.emit(&out)?;
    }
    match reports.iter().find(|r| !r.passed()) {
        Some(r) => Err(Failure::Check(format!("f{} fails the eigenform checks", r.index))),
        None => Ok(()),
    }
}

pub fn census(chi: DirichletChar, common: &Common) -> Outcome {
    if !DirichletChar::NEBENTYPES.contains(&chi) {
        return Err(Failure::Usage(format!("weight 3 needs an odd character, got {chi}")));
    }
    let members = census_all().remove(&chi).unwrap_or_default();
    let result = census_result(chi, members)?;
    let unsound = result.unsound_members().len();
    if common.json {
        common.emit_json(&result)?;
    } else {
        let list: String = result.members.iter().map(|f| format!("{f}\n")).collect();
        let summary = format!(
            "members {}\neisenstein-expressible {}\n",
            result.members.len(),
            result.eisenstein_expressible.len()
        );
        if common.emit.is_some() {
            common.emit(&list)?;
            print!("{summary}");
        } else {
            print!("{list}{summary}");
        }
    }
    if unsound == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("{unsound} members fail the Ligozat re-check")))
    }
}

pub fn verify_remarks(common: &Common) -> Outcome {
    let checks = verify_remark_identities(common.identity_precision()?);
    if common.json {
        common.emit_json(&checks)?;
    } else {
        let mut out = String::new();
        for c in &checks {
            match c.first_failure {
                None => {
                    let _ = writeln!(out, "PASS {}", c.identity);
                }
                Some(n) => {
                    let _ = writeln!(out, "FAIL {} (first difference at q^{n})", c.identity);
                }
            }
        }
        common.emit(&out)?;
    }
    match checks.iter().find(|c| c.first_failure.is_some()) {
        Some(c) => Err(Failure::Check(format!("{} fails", c.identity))),
        None => Ok(()),
    }
}
