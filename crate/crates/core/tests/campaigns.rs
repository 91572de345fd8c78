use jointslab_core::harness::{verify_lemma_campaign, CampaignParams, Lemma};

#[test]
fn lemma2_campaign() {
    let params = CampaignParams::default();
    let a = verify_lemma_campaign(Lemma::Lemma2, 30, 2024, &params).unwrap();
    assert!(a.passed(), "{}", a.to_csv());
    for row in &a.rows {
        // ceil(3 sqrt(L)) by exact integer search
        let bound = (0u32..).find(|&c| c * c >= 9 * row.size as u32).unwrap();
        assert!(row.degree <= bound);
    }
    let b = verify_lemma_campaign(Lemma::Lemma2, 30, 2024, &params).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
}

#[test]
fn lemma1_campaign_small() {
    let params = CampaignParams {
        max_points: 6,
        ..CampaignParams::default()
    };
    let a = verify_lemma_campaign(Lemma::Lemma1, 10, 7, &params).unwrap();
    assert!(a.passed(), "{}", a.to_csv());
    for row in &a.rows {
        let cubes: u64 = row
            .orders
            .split(';')
            .map(|m| m.parse::<u64>().unwrap().pow(3))
            .sum();
        assert!((row.degree as u64).pow(3) <= 8 * cubes);
    }
}

#[test]
fn different_seeds_differ() {
    let params = CampaignParams::default();
    let a = verify_lemma_campaign(Lemma::Lemma2, 10, 1, &params).unwrap();
    let b = verify_lemma_campaign(Lemma::Lemma2, 10, 2, &params).unwrap();
    assert_ne!(a.to_csv(), b.to_csv());
}
