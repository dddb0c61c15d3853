use proptest::prelude::*;

use loghyper::exact::{big, reduce};
use loghyper::padic::{
    braces_pochhammer, default_orbit_budget, dwork_orbit, dwork_prime, iwasawa_log_oneunit, leading_digit, padic_digit,
    pochhammer, psi_tilde,
};
use loghyper::{PAdicNumber, PRational};

const PRIMES: [u64; 5] = [3, 5, 7, 11, 13];

/// A p-integral rational with small numerator and denominator.
fn p_integral() -> impl Strategy<Value = (u64, PRational)> {
    (0..PRIMES.len(), -500i64..500, 1i64..60).prop_map(|(pi, a, b)| {
        let p = PRIMES[pi];
        let b = if b % p as i64 == 0 { b + 1 } else { b };
        (p, PRational::new(a, b).unwrap())
    })
}

proptest! {
    #[test]
    fn residue_round_trip((p, q) in p_integral(), prec in 1u32..6) {
        let x = PAdicNumber::from_rational(&q, p, prec).unwrap();
        let r = x.residue(prec).unwrap();
        prop_assert_eq!(r, reduce(&big(&q), p, prec).unwrap());
        let back = PAdicNumber::from_residue(p, r, prec).unwrap();
        prop_assert!(back.congruent(&x, prec).unwrap());
    }

    #[test]
    fn digits_rebuild_the_number((p, q) in p_integral(), k in 1u32..5) {
        // a = -Σ [a]_n p^n, so the first k digits cancel a mod p^k.
        let mut acc = q;
        let mut pn = 1i64;
        for n in 0..k as usize {
            acc = acc.add_int(padic_digit(&q, p, n).unwrap() as i64 * pn);
            pn *= p as i64;
        }
        prop_assert_eq!(reduce(&big(&acc), p, k).unwrap(), 0);
    }

    #[test]
    fn dwork_prime_shift((p, q) in p_integral()) {
        let l = leading_digit(&q, p).unwrap();
        prop_assert!(l < p);
        let shifted = dwork_prime(&q, p).unwrap();
        prop_assert!(shifted.is_p_integral(p));
        prop_assert_eq!(shifted * PRational::integer(p as i64), q.add_int(l as i64));
    }

    #[test]
    fn orbits_close_up((p, q) in p_integral()) {
        let orbit = dwork_orbit(&q, p, default_orbit_budget(&q, p)).unwrap();
        let start = orbit.preperiod;
        prop_assert_eq!(orbit.iterate(start + orbit.period), orbit.iterate(start));
        prop_assert_eq!(dwork_prime(&orbit.iterate(start + 3), p).unwrap(), orbit.iterate(start + 4));
    }

    #[test]
    fn psi_depends_on_residue_only((p, z) in p_integral(), s in 1u32..5, u in -40i64..40) {
        let z2 = z.add_int(u * (p as i64).pow(s));
        prop_assert_eq!(psi_tilde(&z, p, s).unwrap(), psi_tilde(&z2, p, s).unwrap());
    }

    #[test]
    fn log_is_a_homomorphism(pi in 0..PRIMES.len(), x in -30i64..30, y in -30i64..30, m in 1u32..5) {
        let p = PRIMES[pi];
        let c1 = PRational::integer(1 + p as i64 * x);
        let c2 = PRational::new(1, 1 + p as i64 * y).unwrap();
        let modulus = p.pow(m);
        let sum = (iwasawa_log_oneunit(&c1, p, m).unwrap() + iwasawa_log_oneunit(&c2, p, m).unwrap()) % modulus;
        prop_assert_eq!(iwasawa_log_oneunit(&(c1 * c2), p, m).unwrap(), sum);
    }

    #[test]
    fn braces_split_off_multiples_of_p((p, a) in p_integral(), n in 0u64..40) {
        // (a)_n = {a}_n · Π_{p | a+i} (a+i)
        let full = pochhammer(&a, n, p, 5).unwrap();
        let mut rest = braces_pochhammer(&a, n, p, 5).unwrap();
        prop_assert!(rest.is_unit());
        for i in 0..n {
            let f = a.add_int(i as i64);
            if f.valuation(p).is_none_or(|v| v > 0) {
                rest = rest * PAdicNumber::from_rational(&f, p, 5).unwrap();
            }
        }
        prop_assert_eq!(full.valuation(), rest.valuation());
        if !full.is_exact_zero() {
            prop_assert!(full.congruent(&rest, full.abs_prec().unwrap().min(rest.abs_prec().unwrap()) as u32).unwrap());
        }
    }
}
