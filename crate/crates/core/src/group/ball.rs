use super::word::{GroupWord, Letter};
use crate::error::{Error, Result};

pub const DEFAULT_BALL_CAP: u64 = 10_000_000;

pub fn sphere_size(r: usize) -> u128 {
    if r == 0 {
        1
    } else {
        4 * 3u128.pow(r as u32 - 1)
    }
}

pub fn ball_size(r: usize) -> u128 {
    (0..=r).map(sphere_size).sum()
}

fn check_cap(radius: usize, cap: u64) -> Result<()> {
    let count = ball_size(radius);
    if count > cap as u128 {
        return Err(Error::BallCap { radius, count, cap });
    }
    Ok(())
}

/// All reduced words of length ≤ `radius`, in length-then-lex order.
pub fn enumerate_ball(radius: usize, cap: u64) -> Result<Vec<GroupWord>> {
    check_cap(radius, cap)?;
    let mut out = Vec::with_capacity(ball_size(radius) as usize);
    out.push(GroupWord::identity());
    let mut start = 0;
    for _ in 0..radius {
        let end = out.len();
        for i in start..end {
            let base = out[i].clone();
            for l in Letter::ALL {
                if base.last() != Some(l.inverse()) {
                    let mut next = base.clone();
                    next.push_reduced(l);
                    out.push(next);
                }
            }
        }
        start = end;
    }
    Ok(out)
}

/// The words of length exactly `radius`, in lex order.
pub fn enumerate_sphere(radius: usize, cap: u64) -> Result<Vec<GroupWord>> {
    let mut ball = enumerate_ball(radius, cap)?;
    let skip = ball_size(radius) as usize - sphere_size(radius) as usize;
    Ok(ball.split_off(skip))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(enumerate_ball(0, DEFAULT_BALL_CAP).unwrap(), vec![GroupWord::identity()]);
        let b1: Vec<String> = enumerate_ball(1, DEFAULT_BALL_CAP).unwrap().iter().map(|w| w.to_string()).collect();
        assert_eq!(b1, ["", "a", "A", "b", "B"]);
        assert_eq!(enumerate_ball(3, DEFAULT_BALL_CAP).unwrap().len(), 53);
        assert_eq!(ball_size(6), 1457);
        assert_eq!(ball_size(10), 118_097);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(enumerate_ball(5, 100), Err(Error::BallCap { .. })));
    }

    #[test]
    fn sphere_is_sorted_suffix() {
        let s = enumerate_sphere(4, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(s.len(), 108);
        assert!(s.windows(2).all(|p| p[0] < p[1]));
        assert!(s.iter().all(|w| w.len() == 4));
    }
}
