use num_bigint::BigInt;
use proptest::prelude::*;

use etacong::oracle::naive_euler_product;
use etacong::ring::{Integers, ModPow11, Ring};
use etacong::series::{euler_product, eta_quotient, EtaQuotientSpec, QSeries};
use etacong::verify::up_identity_case;

fn series(max_len: usize) -> impl Strategy<Value = QSeries<Integers>> {
    (-5i64..=5, prop::collection::vec(-30i64..=30, 1..=max_len)).prop_map(|(off, c)| {
        let prec = off + c.len() as i64;
        QSeries::from_i64s(Integers, off, &c, prec)
    })
}

/// Series with a ±1 leading coefficient, hence invertible over Z.
fn unit_series() -> impl Strategy<Value = QSeries<Integers>> {
    (
        -4i64..=4,
        prop_oneof![Just(1i64), Just(-1)],
        prop::collection::vec(-20i64..=20, 0..40),
    )
        .prop_map(|(off, lead, rest)| {
            let mut c = vec![lead];
            c.extend(rest);
            let prec = off + c.len() as i64;
            QSeries::from_i64s(Integers, off, &c, prec)
        })
}

/// Equality below the smaller of the two precisions. Reducing first can only
/// raise the order of an operand, so a modular result may be trusted further.
fn same_on_window<R: Ring>(a: &QSeries<R>, b: &QSeries<R>) -> bool {
    let p = a.prec().min(b.prec());
    a.clone().truncate(p) == b.clone().truncate(p)
}

proptest! {
    #[test]
    fn mul_commutes(a in series(40), b in series(40)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn mul_associates(a in series(40), b in series(40), c in series(40)) {
        let l = a.mul(&b).unwrap().mul(&c).unwrap();
        let r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(same_on_window(&l, &r), "{} vs {}", l, r);
    }

    #[test]
    fn mul_distributes(a in series(40), b in series(40), c in series(40)) {
        let l = a.mul(&b.add(&c).unwrap()).unwrap();
        let r = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(same_on_window(&l, &r), "{} vs {}", l, r);
    }

    #[test]
    fn inverse_round_trip(a in unit_series()) {
        let prod = a.mul(&a.inv().unwrap()).unwrap();
        prop_assert!(prod.prec() >= 1);
        for n in 0..prod.prec() {
            let want = BigInt::from(i64::from(n == 0));
            prop_assert_eq!(prod.coeff_bigint(n).unwrap(), want);
        }
    }

    #[test]
    fn int_pow_matches_repeated_products(a in unit_series(), e in -3i64..=4) {
        let mut want = QSeries::one(Integers, a.prec() - a.offset());
        let base = if e < 0 { a.inv().unwrap() } else { a.clone() };
        for _ in 0..e.abs() {
            want = want.mul(&base).unwrap();
        }
        let got = a.int_pow(e).unwrap();
        prop_assert!(same_on_window(&got, &want), "{} vs {}", got, want);
    }

    #[test]
    fn u11_commutes_with_dilated_factor(
        f_off in -20i64..=0,
        f in prop::collection::vec(-50i64..=50, 1..=420),
        g in prop::collection::vec(-50i64..=50, 1..=31),
    ) {
        let f = QSeries::from_i64s(Integers, f_off, &f, 401);
        let g = QSeries::from_i64s(Integers, 0, &g, 31);
        prop_assert_eq!(up_identity_case(&f, &g).unwrap(), None);
    }

    #[test]
    fn u_p_never_reads_past_precision(a in series(60), p in prop_oneof![Just(2u64), Just(5), Just(11)]) {
        let u = a.u_p(p).unwrap();
        let p = p as i64;
        // the last exposed index n must satisfy p n < prec
        prop_assert!(p * (u.prec() - 1) < a.prec());
        prop_assert!(p * u.prec() >= a.prec());
        for n in u.offset()..u.prec() {
            prop_assert_eq!(u.coeff_bigint(n).unwrap(), a.coeff_bigint(p * n).unwrap());
        }
    }

    #[test]
    fn reduction_commutes_with_operations(
        a in series(30),
        b in unit_series(),
        k in 1u32..=18,
        p in prop_oneof![Just(5u64), Just(11)],
    ) {
        let ring = ModPow11::new(k).unwrap();
        let (am, bm) = (a.map_ring(ring), b.map_ring(ring));
        let pairs = [
            (am.mul(&bm).unwrap(), a.mul(&b).unwrap().map_ring(ring)),
            (am.add(&bm).unwrap(), a.add(&b).unwrap().map_ring(ring)),
            (bm.inv().unwrap(), b.inv().unwrap().map_ring(ring)),
            (am.u_p(p).unwrap(), a.u_p(p).unwrap().map_ring(ring)),
            (am.dilate(p).unwrap(), a.dilate(p).unwrap().map_ring(ring)),
        ];
        for (reduced_first, exact_first) in &pairs {
            prop_assert!(
                same_on_window(reduced_first, exact_first),
                "{} vs {}", reduced_first, exact_first
            );
            prop_assert!(reduced_first.prec() >= exact_first.prec());
        }
    }

    #[test]
    fn eta_quotients_reduce(c in -8i64..=8, d in -8i64..=8, k in 1u32..=18) {
        let ring = ModPow11::new(k).unwrap();
        let spec = EtaQuotientSpec::new([(1, -c), (11, -d)], false).unwrap();
        let exact = eta_quotient(&spec, 150, Integers).unwrap();
        let modular = eta_quotient(&spec, 150, ring).unwrap();
        prop_assert_eq!(modular, exact.map_ring(ring));
    }

    #[test]
    fn phi_powers_have_offset_5_lambda(lambda in -6i64..=6) {
        let phi = eta_quotient(&EtaQuotientSpec::phi_power(lambda), 5 * lambda + 40, Integers).unwrap();
        prop_assert_eq!(phi.order(), Some(5 * lambda));
        prop_assert_eq!(phi.coeff_bigint(5 * lambda).unwrap(), BigInt::from(1));
    }
}

#[test]
fn pentagonal_products_match_naive() {
    for s in [1u64, 11, 121] {
        for prec in [1i64, 2, 7, 50, 121, 122, 300] {
            let fast = euler_product(s, prec, Integers).unwrap();
            let slow = naive_euler_product(s as usize, prec as usize);
            assert_eq!(fast.prec(), prec);
            for (n, want) in slow.iter().enumerate() {
                assert_eq!(&fast.coeff_bigint(n as i64).unwrap(), want, "s = {s}, n = {n}");
            }
        }
    }
}

#[test]
fn residues_agree_with_integers() {
    let ring = ModPow11::new(3).unwrap();
    for x in [-1332i64, -1, 0, 1, 121, 1331, 2662, 999_999] {
        let r = ring.from_i64(x);
        assert_eq!(
            ring.to_bigint(&r),
            BigInt::from(x.rem_euclid(1331)),
            "x = {x}"
        );
    }
}
