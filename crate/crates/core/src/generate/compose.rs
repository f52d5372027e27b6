use alloc::format;
use alloc::vec::Vec;

use crate::{Error, Result, Square};

/// Tiles an `m × m` grid of equal-order, equal-width blocks into one square
/// of order `m · k`. No magic property is implied; verify the result.
pub fn compose_blocks<R: AsRef<[Square]>>(blocks: &[R]) -> Result<Square> {
    let m = blocks.len();
    let first = blocks
        .first()
        .and_then(|r| r.as_ref().first())
        .ok_or_else(|| Error::ShapeMismatch("no blocks to compose".into()))?;
    let (k, width) = (first.order(), first.width());
    for (bi, row) in blocks.iter().enumerate() {
        let row = row.as_ref();
        if row.len() != m {
            return Err(Error::ShapeMismatch(format!(
                "block row {bi} has {} blocks, expected {m}",
                row.len()
            )));
        }
        for (bj, b) in row.iter().enumerate() {
            if b.order() != k || b.width() != width {
                return Err(Error::ShapeMismatch(format!(
                    "block ({bi}, {bj}) is order {} width {}, expected order {k} width {width}",
                    b.order(),
                    b.width()
                )));
            }
        }
    }
    let n = m * k;
    let mut cells = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            cells.push(*blocks[i / k].as_ref()[j / k].get(i % k, j % k));
        }
    }
    Square::new(n, cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify;
    use alloc::vec;

    #[test]
    fn identical_unit_blocks() {
        let block = Square::from_rows(&[["1", "1"], ["1", "1"]]).unwrap();
        let s = compose_blocks(&[
            vec![block.clone(), block.clone()],
            vec![block.clone(), block],
        ])
        .unwrap();
        assert_eq!(s.order(), 4);
        assert!(s.cells().iter().all(|c| c.value() == 1));
        assert_eq!(verify::check_blocks(&s, 2), Ok(Some(4)));
    }

    #[test]
    fn placement() {
        let b = |v: &str| Square::from_rows(&[[v]]).unwrap();
        let s = compose_blocks(&[[b("1"), b("2")], [b("3"), b("4")]]).unwrap();
        assert_eq!(s.get(0, 1).value(), 2);
        assert_eq!(s.get(1, 0).value(), 3);
    }

    #[test]
    fn mismatches() {
        let a = Square::from_rows(&[["1"]]).unwrap();
        let wide = Square::from_rows(&[["11"]]).unwrap();
        assert!(matches!(
            compose_blocks(&[vec![a.clone(), wide.clone()], vec![a.clone(), a.clone()]]),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            compose_blocks(&[vec![a.clone()], vec![a]]),
            Err(Error::ShapeMismatch(_))
        ));
        let empty: [Vec<Square>; 0] = [];
        assert!(compose_blocks(&empty).is_err());
    }
}
