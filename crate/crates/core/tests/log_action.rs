//! Groups whose generator acts by `1 + A` instead of `exp(A)`.

use lazard_core::catalog::{make_soluble, soluble_grid, ActionKind, SolubleFamily};
use lazard_core::classify::{classify, classify_mod, SimilarityDescriptor};
use lazard_core::{mat_log, PMatrix, PadicContext};

fn log_one_plus(a: &PMatrix) -> PMatrix {
    let id = PMatrix::identity(a.ctx(), a.rows());
    mat_log(&id.add(a).unwrap()).unwrap()
}

#[test]
fn one_plus_a_list_is_irredundant() {
    let ctx = PadicContext::new(5, 12).unwrap();
    let classes: Vec<(SolubleFamily, SimilarityDescriptor)> = soluble_grid(&ctx)
        .into_iter()
        .map(|f| (f, classify_mod(&log_one_plus(&f.matrix(&ctx).unwrap())).unwrap()))
        .collect();
    for (i, (f1, d1)) in classes.iter().enumerate() {
        for (f2, d2) in &classes[i + 1..] {
            assert!(!d1.same_class(d2), "{f1} and {f2} both give {d1}");
        }
    }
}

#[test]
fn logarithm_shifts_the_discriminant() {
    // A = 5 (I + 5 ((0,1),(1,0))): disc/tr^2 = p^2 d with d = 1
    let ctx = PadicContext::new(5, 6).unwrap();
    let a = SolubleFamily::G2 { s: 1, r: 1, d: 1 }.matrix(&ctx).unwrap();
    let l = log_one_plus(&a);
    let (t, det) = (l.trace(), l.det2());
    let disc = ctx.sub(ctx.mul(t, t), ctx.mul(4, det));
    // t has valuation 1, disc valuation 4: disc / t^2 / p^2 modulo p^(6 - 4)
    let unit_t = ctx.unit_part(t);
    let d = ctx.mul(ctx.div_p_pow(disc, 4), ctx.inv(ctx.mul(unit_t, unit_t)).unwrap()) % 25;
    assert_eq!(d, 221 % 25);
    match classify(&l).unwrap() {
        SimilarityDescriptor::ScalarPlus { s: 1, r: 1, d: res } => assert_eq!(res.value % 25, d),
        other => panic!("unexpected {other}"),
    }
    assert!(!classify(&l).unwrap().same_class(&classify(&a).unwrap()));
}

#[test]
fn exp_action_matches_the_lattice() {
    let ctx = PadicContext::new(5, 6).unwrap();
    for f in soluble_grid(&ctx) {
        let pair = make_soluble(&ctx, f, ActionKind::Exp).unwrap();
        assert_eq!(mat_log(pair.group.action()).unwrap(), pair.action, "{f}");
    }
}
