//! Bundled reproduction suite behind `compseq selftest`.

use compseq_core::analysis::{column_report, existence_thresholds, lambda_b};
use compseq_core::complementary::{are_mates, is_companion_pair, is_golay_pair};
use compseq_core::construct::{build, golay_seed, BuildRecipe, ExtendMode, MoCollection};
use compseq_core::search::case1_lift;
use compseq_core::{merits, Seq, SeqMatrix};

use crate::data;

pub struct Item {
    pub name: &'static str,
    pub outcome: Result<(), String>,
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Entry-wise equality, ignoring the recorded alphabet.
pub fn same_entries(a: &SeqMatrix, b: &SeqMatrix) -> bool {
    a.rows() == b.rows() && a.cols() == b.cols() && (0..a.rows()).all(|i| a.row(i) == b.row(i))
}

fn seq(s: &str) -> Seq {
    s.parse().expect("literal")
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub fn quad_example() -> Result<MoCollection, String> {
    let c0 = seq("+ +j - +j");
    let c1 = c0.f_i_conj().map_err(err)?;
    build(&c0, &c1, &BuildRecipe::uniform(1, ExtendMode::Concat, 0, ExtendMode::Concat)).map_err(err)
}

fn quad_c1_d1() -> Result<(), String> {
    let want = data::matrices(data::QUAD_C1_D1);
    let mo = quad_example()?;
    check(same_entries(&mo.set(0), &want[0]), || format!("C(1) differs:\n{}", mo.set(0)))?;
    check(same_entries(&mo.set(1), &want[1]), || format!("D(1) differs:\n{}", mo.set(1)))
}

pub fn quad_size_extended() -> Result<MoCollection, String> {
    let c0 = seq("+ +j - +j");
    let c1 = c0.f_i_conj().map_err(err)?;
    build(&c0, &c1, &BuildRecipe::uniform(1, ExtendMode::Concat, 1, ExtendMode::Concat)).map_err(err)
}

fn quad_mo4() -> Result<(), String> {
    let mo = quad_size_extended()?;
    let wide = &data::matrices(data::QUAD_MO4_WIDE)[0];
    check(same_entries(mo.matrix(), wide), || "wide matrix differs".into())?;
    let sets = data::matrices(data::QUAD_MO4_SETS);
    check(mo.sets().iter().zip(&sets).all(|(a, b)| same_entries(a, b)), || "sets differ".into())?;
    check(mo.is_mo(), || "not MO".into())?;
    let r = column_report(mo.matrix());
    check(r.lambda_a().as_integer() == Some(4) && r.s_a.as_integer() == Some(12), || {
        format!("column lambdaA {} SA {}, expected 4 and 12", r.lambda_a(), r.s_a)
    })
}

fn golay_example() -> Result<(), String> {
    let (h00, h01, h10, h11) = golay_seed(2);
    let want = ["+ + - + - - - +", "+ - - - - + - -", "+ - + + - + + +", "+ + + - - - + -"];
    for (got, w) in [&h00, &h01, &h10, &h11].into_iter().zip(want) {
        check(*got == seq(w).with_alphabet(got.alphabet()).map_err(err)?, || format!("seed {} != {}", got, w))?;
    }
    let mo = build(&h00, &h10, &BuildRecipe::uniform(2, ExtendMode::Interleave, 0, ExtendMode::Concat)).map_err(err)?;
    let c2 = &data::matrices(data::GOLAY_INTERLEAVE_C2)[0];
    check(same_entries(&mo.set(0), c2), || format!("C(2) differs:\n{}", mo.set(0)))?;
    for col in mo.columns() {
        let partner = if col == h00 || col == h00.negate() { &h01 } else { &h11 };
        check(is_golay_pair(&col, partner).map_err(err)?, || format!("column {} is not Golay", col))?;
    }
    Ok(())
}

fn ternary_example() -> Result<(), String> {
    let c0 = seq("+ - - + + + 0 +");
    let c1 = c0.f_i().map_err(err)?;
    let mo = build(&c0, &c1, &BuildRecipe::uniform(2, ExtendMode::Concat, 0, ExtendMode::Concat)).map_err(err)?;
    let want = data::matrices(data::TERNARY_C2_D2);
    let (c, d) = (mo.set(0), mo.set(1));
    check(same_entries(&c, &want[0]) && same_entries(&d, &want[1]), || "C(2)/D(2) differ".into())?;
    check(mo.columns().iter().all(|c| c.zero_count() == 1), || "a column does not have exactly one zero".into())?;
    check(are_mates(&c, &d).map_err(err)?, || "C(2) and D(2) are not mates".into())
}

fn min_pairs() -> Result<(), String> {
    for p in data::min_pairs() {
        let (c0, c1) = p.seqs();
        check(is_companion_pair(&c0, &c1).map_err(err)?.is_some(), || format!("m={} pair is not companion", p.m))?;
        let (r0, r1) = (merits(&c0), merits(&c1));
        if let Some(l) = p.lambda_a_min {
            let got = r0.lambda_a().max(r1.lambda_a());
            check(got.as_integer() == Some(l), || format!("m={} lambdaA {} != {}", p.m, got, l))?;
        }
        if let Some(s) = p.s_a_min {
            let got = r0.s_a.max(r1.s_a);
            check(got.as_integer() == Some(s), || format!("m={} SA {} != {}", p.m, got, s))?;
        }
    }
    Ok(())
}

fn welch_values() -> Result<(), String> {
    for r in data::welch_rows() {
        let got = existence_thresholds(r.m).map_err(err)?.lambda_w_a;
        check(got == r.lambda_w, || format!("m={} lambda_W {} != {}", r.m, got, r.lambda_w))?;
    }
    Ok(())
}

fn annealed_pairs() -> Result<(), String> {
    for p in data::annealed_pairs() {
        let (s0, s1) = p.seqs();
        let lb = lambda_b(&s0, &s1).map_err(err)?;
        check(lb.as_integer() == Some(p.lambda_b), || format!("m={} lambda_B {} != {}", p.m, lb, p.lambda_b))?;
        let pair = case1_lift(&s0, &s1).map_err(err)?;
        let lu = merits(&pair.c0).lambda_a().max(merits(&pair.c1).lambda_a());
        check(lu.as_integer() == Some(p.lambda_u), || format!("m={} lambda_u {} != {}", p.m, lu, p.lambda_u))?;
    }
    Ok(())
}

pub fn run() -> Vec<Item> {
    let items: [(&'static str, fn() -> Result<(), String>); 7] = [
        ("quadriphase C(1)/D(1) bit-exact", quad_c1_d1),
        ("size-extended quadriphase MO collection, lambdaA_u=4 SA_u=12", quad_mo4),
        ("Golay seeds and interleaved C(2) with Golay columns", golay_example),
        ("ternary C(2)/D(2), one zero per column, mates", ternary_example),
        ("binary minimum pairs verify with stated merits", min_pairs),
        ("lambda_W for 16 long seed lengths", welch_values),
        ("annealed half pairs: lambda_B and lifted lambda_u", annealed_pairs),
    ];
    items.into_iter().map(|(name, f)| Item { name, outcome: f() }).collect()
}
