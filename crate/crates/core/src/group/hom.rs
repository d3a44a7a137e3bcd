use fixedbitset::FixedBitSet;

use super::{Elem, Group, GroupError, Subgroup, NONE};

/// Extends `gens[i] -> images[i]` to a homomorphism `src -> dst`, checking
/// consistency along every edge of the Cayley graph.
pub fn extend_homomorphism(
    src: &dyn Group,
    dst: &dyn Group,
    gens: &[Elem],
    images: &[Elem],
) -> Result<Vec<Elem>, GroupError> {
    assert_eq!(gens.len(), images.len(), "one image per generator");
    let n = src.order();
    let mut map = vec![NONE; n];
    map[src.identity() as usize] = dst.identity();
    let mut queue = vec![src.identity()];
    let mut head = 0;
    while head < queue.len() {
        let e = queue[head];
        head += 1;
        let fe = map[e as usize];
        for (&s, &t) in gens.iter().zip(images) {
            let es = src.mul(e, s);
            let want = dst.mul(fe, t);
            match map[es as usize] {
                NONE => {
                    map[es as usize] = want;
                    queue.push(es);
                }
                got if got != want => {
                    return Err(GroupError::NotHomomorphism(format!(
                        "{e}·{s} = {es} reached with images {got} and {want}"
                    )));
                }
                _ => {}
            }
        }
    }
    if queue.len() != n {
        return Err(GroupError::NotGenerating);
    }
    Ok(map)
}

fn require_injective(map: &[Elem], dst_order: usize) -> Result<FixedBitSet, GroupError> {
    let mut seen = FixedBitSet::with_capacity(dst_order);
    for (e, &f) in map.iter().enumerate() {
        if seen.put(f as usize) {
            return Err(GroupError::NotBijective(format!("kernel contains {e}")));
        }
    }
    Ok(seen)
}

/// Like [`extend_homomorphism`], additionally requiring a bijection.
pub fn iso_check(src: &dyn Group, dst: &dyn Group, gens: &[Elem], images: &[Elem]) -> Result<Vec<Elem>, GroupError> {
    if src.order() != dst.order() {
        return Err(GroupError::NotBijective(format!(
            "orders {} and {}",
            src.order(),
            dst.order()
        )));
    }
    let map = extend_homomorphism(src, dst, gens, images)?;
    require_injective(&map, dst.order())?;
    Ok(map)
}

/// An isomorphism from `src` onto the subgroup `target` of `dst`.
pub fn iso_onto(
    src: &dyn Group,
    dst: &dyn Group,
    gens: &[Elem],
    images: &[Elem],
    target: &Subgroup,
) -> Result<Vec<Elem>, GroupError> {
    let map = extend_homomorphism(src, dst, gens, images)?;
    let seen = require_injective(&map, dst.order())?;
    if map.len() != target.order() || target.elements().iter().any(|&t| !seen.contains(t as usize)) {
        return Err(GroupError::NotBijective(format!(
            "image of order {} is not the target of order {}",
            map.len(),
            target.order()
        )));
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{close_subgroup, TableGroup};

    #[test]
    fn cyclic_maps() {
        let c6 = TableGroup::cyclic(6);
        let c3 = TableGroup::cyclic(3);
        let f = extend_homomorphism(&c6, &c3, &[1], &[1]).unwrap();
        assert_eq!(f, vec![0, 1, 2, 0, 1, 2]);
        assert!(matches!(
            extend_homomorphism(&c3, &c6, &[1], &[1]),
            Err(GroupError::NotHomomorphism(_))
        ));
        assert!(iso_check(&c6, &c6, &[1], &[5]).is_ok());
        assert!(iso_check(&c6, &c6, &[1], &[2]).is_err());
        assert!(matches!(
            extend_homomorphism(&c6, &c6, &[2], &[2]),
            Err(GroupError::NotGenerating)
        ));
    }

    #[test]
    fn onto_subgroup() {
        let c3 = TableGroup::cyclic(3);
        let c6 = TableGroup::cyclic(6);
        let target = close_subgroup(&c6, &[2]);
        assert!(iso_onto(&c3, &c6, &[1], &[4], &target).is_ok());
        assert!(iso_onto(&c3, &c6, &[1], &[0], &target).is_err());
    }
}
