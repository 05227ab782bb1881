use elementary_numerosity::dsl::{elaborate, parse_and_elaborate, parse_corpus, parse_event, render, DslError};
use elementary_numerosity::events::{Event, GroundModel, ModelKind};
use elementary_numerosity::sampling::{self, CoinShape};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn corpora_parse_and_round_trip() {
    for (file, model) in [
        (include_str!("data/coin_events.txt"), GroundModel::Coin),
        (include_str!("data/interval_events.txt"), GroundModel::Interval),
    ] {
        let items = parse_corpus(file, model.kind()).unwrap();
        assert!(items.len() >= 8);
        for (line, ast) in items {
            let e = elaborate(&ast, &model).unwrap_or_else(|err| panic!("line {line}: {err}"));
            let text = render(&e);
            assert_eq!(parse_and_elaborate(&text, &model).unwrap(), e, "line {line}: {text}");
            assert_eq!(render(&parse_and_elaborate(&text, &model).unwrap()), text);
        }
    }
}

#[test]
fn random_events_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let space = sampling::finite_space(7);
    let finite = GroundModel::Finite(space.clone());
    for _ in 0..500 {
        let cases = [
            (Event::Coin(sampling::coin_event(&mut rng, CoinShape::default())), GroundModel::Coin),
            (Event::Interval(sampling::interval_event(&mut rng)), GroundModel::Interval),
            (Event::Finite(sampling::finite_event(&mut rng, &space)), finite.clone()),
        ];
        for (e, model) in cases {
            let text = render(&e);
            assert_eq!(parse_and_elaborate(&text, &model).unwrap(), e, "{text}");
        }
    }
}

#[test]
fn precedence_disambiguation() {
    let coin = |s: &str| parse_and_elaborate(s, &GroundModel::Coin).unwrap();
    let vectors = [
        ("~C(1:H) & C(2:H)", "(~C(1:H)) & C(2:H)"),
        ("C(1:H) | C(2:H) & C(3:H)", "C(1:H) | (C(2:H) & C(3:H))"),
        ("C(1:H) & C(2:H) | C(3:H)", "(C(1:H) & C(2:H)) | C(3:H)"),
        ("C(1:H) \\ C(2:H) | C(3:H)", "(C(1:H) \\ C(2:H)) | C(3:H)"),
        ("C(3:H) | C(1:H) \\ C(2:H)", "C(3:H) | (C(1:H) \\ C(2:H))"),
        ("C(1:H) \\ C(2:H) & C(3:H)", "(C(1:H) \\ C(2:H)) & C(3:H)"),
        ("C(3:H) & C(1:H) \\ C(2:H)", "C(3:H) & (C(1:H) \\ C(2:H))"),
        ("~C(1:H) \\ C(2:H)", "(~C(1:H)) \\ C(2:H)"),
    ];
    for (bare, grouped) in vectors {
        assert_eq!(coin(bare), coin(grouped), "{bare}");
    }
    assert_ne!(coin("C(1:H) \\ C(2:H) & C(3:H)"), coin("C(1:H) \\ (C(2:H) & C(3:H))"));
}

#[test]
fn unicode_operators_are_accepted() {
    let a = parse_and_elaborate("¬C(1:H) ∪ C(2:H) ∩ C(3:T)", &GroundModel::Coin).unwrap();
    let b = parse_and_elaborate("~C(1:H) | C(2:H) & C(3:T)", &GroundModel::Coin).unwrap();
    assert_eq!(a, b);
}

#[test]
fn fuzzed_input_never_panics() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let tokens = [
        "C(1:H)", "C(2:T, 3:H)", "Omega", "Empty", "{HT(H)}", "[0, 1)", "{1/2}", "|", "&", "\\", "~", "(",
        ")", "∪", "C(", ":", ",", "H", "1",
    ];
    let mut parsed = 0;
    for k in 0..100_000 {
        let len = rng.gen_range(0..24);
        let src: String = if k % 2 == 0 {
            let bytes: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
            String::from_utf8_lossy(&bytes).into_owned()
        } else {
            (0..len / 3).map(|_| tokens[rng.gen_range(0..tokens.len())]).collect::<Vec<_>>().join(" ")
        };
        for model in [ModelKind::Coin, ModelKind::Interval] {
            match parse_event(&src, model) {
                Ok(_) => parsed += 1,
                Err(DslError::Syntax { position, .. } | DslError::Semantic { position, .. }) => {
                    assert!(position.line >= 1 && position.column >= 1)
                }
            }
        }
    }
    assert!(parsed > 0);
}
