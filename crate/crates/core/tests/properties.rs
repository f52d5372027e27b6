use proptest::prelude::*;
use updown_core::sevenseg::{render_codeword_text, render_square, rotate_text};
use updown_core::{CodeWord, DigitMap, Square};

fn word_over(digits: &'static [u8], max_width: usize) -> impl Strategy<Value = CodeWord> {
    prop::collection::vec(prop::sample::select(digits), 1..=max_width)
        .prop_map(|d| CodeWord::from_digits(&d).unwrap())
}

fn square_over(digits: &'static [u8]) -> impl Strategy<Value = Square> {
    (1usize..=6, 1usize..=6).prop_flat_map(move |(n, w)| {
        prop::collection::vec(
            prop::collection::vec(prop::sample::select(digits), w),
            n * n,
        )
        .prop_map(move |cells| {
            let cells = cells
                .iter()
                .map(|d| CodeWord::from_digits(d).unwrap())
                .collect();
            Square::new(n, cells).unwrap()
        })
    })
}

const ALL: &[u8] = &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9];
const ROTATABLE: &[u8] = &[0, 1, 2, 5, 6, 8, 9];
const MIRRORABLE: &[u8] = &[0, 1, 2, 5, 8];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn decompose_then_recompose(s in square_over(ALL)) {
        let stack = s.decompose();
        prop_assert_eq!(stack.width(), s.width());
        prop_assert_eq!(stack.recompose().unwrap(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn rendered_rotation_matches_codeword_rotation(w in word_over(ROTATABLE, 8)) {
        let rotated = w.rotate(&DigitMap::rotation()).unwrap();
        prop_assert_eq!(
            rotate_text(&render_codeword_text(&w)).unwrap(),
            render_codeword_text(&rotated)
        );
    }

    #[test]
    fn codeword_mirror_is_an_involution(w in word_over(MIRRORABLE, 12)) {
        let m = DigitMap::mirror();
        prop_assert_eq!(w.mirror(&m).unwrap().mirror(&m).unwrap(), w);
    }

    #[test]
    fn codeword_rotation_is_an_involution(w in word_over(ROTATABLE, 12)) {
        let r = DigitMap::rotation();
        prop_assert_eq!(w.rotate(&r).unwrap().rotate(&r).unwrap(), w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn square_transforms_are_involutions(s in square_over(ROTATABLE)) {
        let r = DigitMap::rotation();
        prop_assert_eq!(s.rotate(&r).unwrap().rotate(&r).unwrap(), s);
    }

    #[test]
    fn square_mirror_is_an_involution(s in square_over(MIRRORABLE)) {
        let m = DigitMap::mirror();
        prop_assert_eq!(s.mirror(&m).unwrap().mirror(&m).unwrap(), s);
    }

    #[test]
    fn rendered_square_rotation(s in square_over(ROTATABLE), compact in any::<bool>()) {
        let rotated = s.rotate(&DigitMap::rotation()).unwrap();
        let text = render_square(&s, compact);
        prop_assert_eq!(rotate_text(&text).unwrap(), render_square(&rotated, compact));
        prop_assert!(text.lines().all(|l| l.trim_end() == l));
    }
}
