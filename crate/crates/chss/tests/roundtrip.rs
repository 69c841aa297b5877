mod common;

use chss::io::{detect, AnyFile, ShareFile};
use chss::{level_residue, reconstruct, recover_level, split_with_transcript, Error, PublicBulletin};
use common::{family, random_config, Shape};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn shapes() -> Vec<Shape> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 257] {
        for levels in 1..=3 {
            out.push(Shape {
                p,
                levels,
                max_n: 6,
                max_d0: 2,
                max_degree: if p == 2 { 5 } else { 3 },
                max_top_width: 64,
            });
        }
    }
    out
}

#[test]
fn split_then_reconstruct_every_authorized_set() {
    let mut rng = ChaCha20Rng::seed_from_u64(11);
    for shape in shapes() {
        let cfg = random_config(shape, &mut rng);
        let fam = family(&cfg);
        let n = cfg.participants();
        for _ in 0..5 {
            let s = chss::Secret::random(&cfg, &mut rng);
            let (shares, bulletin, t) = split_with_transcript(&s, &cfg, &fam, &mut rng).unwrap();
            // masking consistency over the whole key domain
            for &(level, id) in bulletin.entries().keys() {
                let r = level_residue(&bulletin, &fam, &shares[id - 1], level).unwrap();
                assert_eq!(r, t.level_polys[level - 1].rem(cfg.modulus_of(id)).unwrap());
            }
            for (l, f) in t.level_polys.iter().enumerate() {
                assert!(f.degree_below(cfg.level_degree_bound(l + 1)));
            }
            for mask in 1u32..(1 << n) {
                let set = cfg.participant_set((1..=n).filter(|i| mask & (1 << (i - 1)) != 0)).unwrap();
                let mut chosen: Vec<_> = shares.iter().filter(|b| set.contains(b.participant)).cloned().collect();
                chosen.shuffle(&mut rng);
                let got = reconstruct(&bulletin, &fam, &chosen);
                match cfg.first_shortfall(&set).unwrap() {
                    None => {
                        assert_eq!(got.as_ref(), Ok(&s));
                        for level in 1..=cfg.levels() {
                            assert_eq!(recover_level(&bulletin, &fam, &chosen, level).unwrap().f, t.level_polys[level - 1]);
                        }
                    }
                    Some((level, have, need)) => {
                        assert_eq!(got, Err(Error::NotAuthorized { level, have, need }))
                    }
                }
            }
        }
    }
}

#[test]
fn files_round_trip() {
    let mut rng = ChaCha20Rng::seed_from_u64(12);
    for shape in shapes() {
        let cfg = random_config(shape, &mut rng);
        let fam = family(&cfg);
        let s = chss::Secret::random(&cfg, &mut rng);
        let (shares, bulletin, t) = split_with_transcript(&s, &cfg, &fam, &mut rng).unwrap();
        let text = bulletin.to_json();
        assert!(matches!(detect(&text).unwrap(), AnyFile::Bulletin(_)));
        let back = PublicBulletin::from_json(&text).unwrap();
        assert_eq!(back, bulletin);
        assert_eq!(back.to_json(), text);
        let mut bound = Vec::new();
        for share in &shares {
            let json = share.to_json(&bulletin).unwrap();
            assert!(matches!(detect(&json).unwrap(), AnyFile::Share(_)));
            let file = ShareFile::from_json(&json).unwrap();
            assert_eq!(file.to_json(), json);
            assert_eq!(file.coefficient_count(), cfg.degree(share.participant));
            bound.push(file.bind(&back).unwrap());
        }
        assert_eq!(bound, shares);
        assert_eq!(reconstruct(&back, &fam, &bound).unwrap(), s);
        let tj = t.to_json();
        assert_eq!(chss::Transcript::from_json(&tj, &cfg).unwrap(), t);
        let cj = cfg.to_json();
        assert!(matches!(detect(&cj).unwrap(), AnyFile::Config(_)));
    }
}

#[test]
fn shares_from_another_split_do_not_bind() {
    let mut rng = ChaCha20Rng::seed_from_u64(13);
    let cfg = random_config(
        Shape {
            p: 257,
            levels: 2,
            max_n: 5,
            max_d0: 1,
            max_degree: 2,
            max_top_width: 64,
        },
        &mut rng,
    );
    let fam = family(&cfg);
    let s = chss::Secret::random(&cfg, &mut rng);
    let (_, first, _) = split_with_transcript(&s, &cfg, &fam, &mut rng).unwrap();
    let (shares, second, _) = split_with_transcript(&s, &cfg, &fam, &mut rng).unwrap();
    let file = shares[0].to_file(&second).unwrap();
    assert_eq!(file.bind(&first), Err(Error::BindingMismatch { id: 1 }));
}
