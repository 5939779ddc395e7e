//! Closure-property classification of Boolean relations.

use super::SchaeferError;
use crate::model::BoolRelation;
use std::collections::BTreeMap;

/// Which closure properties a relation (or a whole language) enjoys.
/// `zero_valid` and `one_valid` are not closure properties but travel with
/// the classification because reductions branch on them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchaeferClass {
    pub horn: bool,
    pub dualhorn: bool,
    pub bijunctive: bool,
    pub affine: bool,
    pub zero_valid: bool,
    pub one_valid: bool,
}

impl SchaeferClass {
    /// True when at least one of the four tractable flags is set.
    pub fn is_schaefer(&self) -> bool {
        self.horn || self.dualhorn || self.bijunctive || self.affine
    }

    /// Componentwise conjunction; the classification of a language is the
    /// meet of its relations' classifications.
    fn meet(self, other: SchaeferClass) -> SchaeferClass {
        SchaeferClass {
            horn: self.horn && other.horn,
            dualhorn: self.dualhorn && other.dualhorn,
            bijunctive: self.bijunctive && other.bijunctive,
            affine: self.affine && other.affine,
            zero_valid: self.zero_valid && other.zero_valid,
            one_valid: self.one_valid && other.one_valid,
        }
    }

    /// The all-true element, identity for [`SchaeferClass::meet`].
    fn top() -> SchaeferClass {
        SchaeferClass {
            horn: true,
            dualhorn: true,
            bijunctive: true,
            affine: true,
            zero_valid: true,
            one_valid: true,
        }
    }
}

const ARITY_CAP: usize = 8;

/// Tests the four closure properties by exhausting tuple pairs (AND, OR)
/// and triples (majority, XOR). Repeated tuples in a pair or triple add
/// nothing: both ternary operations are idempotent in the sense that
/// maj(a,a,b) = a and a XOR a XOR b = b, so iterating over index triples
/// with repetition is harmless and keeps the loops uniform.
pub fn classify_relation(r: &BoolRelation) -> Result<SchaeferClass, SchaeferError> {
    if r.arity() > ARITY_CAP {
        return Err(SchaeferError::ArityCap { arity: r.arity(), cap: ARITY_CAP });
    }
    let masks = r.tuple_masks();
    let mut member = [false; 256];
    for &m in &masks {
        member[m as usize] = true;
    }
    let full = ((1u32 << r.arity()) - 1) as u16;

    let mut horn = true;
    let mut dualhorn = true;
    for &a in &masks {
        for &b in &masks {
            horn &= member[(a & b) as usize];
            dualhorn &= member[(a | b) as usize];
        }
    }
    let mut bijunctive = true;
    let mut affine = true;
    for &a in &masks {
        for &b in &masks {
            for &c in &masks {
                bijunctive &= member[((a & b) | (a & c) | (b & c)) as usize];
                affine &= member[(a ^ b ^ c) as usize];
            }
        }
    }
    Ok(SchaeferClass {
        horn,
        dualhorn,
        bijunctive,
        affine,
        zero_valid: member[0],
        one_valid: member[full as usize],
    })
}

/// Classification of a whole language: each flag holds iff it holds for
/// every relation. The empty language gets every flag.
pub fn classify_language(
    language: &BTreeMap<String, BoolRelation>,
) -> Result<SchaeferClass, SchaeferError> {
    let mut acc = SchaeferClass::top();
    for rel in language.values() {
        acc = acc.meet(classify_relation(rel)?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(arity: usize, masks: &[u16]) -> BoolRelation {
        BoolRelation::from_masks(arity, masks).unwrap()
    }

    /// Mask convention: coordinate 1 is the least significant bit, so the
    /// tuple (x1,x2) = (0,1) is mask 0b10.
    #[test]
    fn implication_relation() {
        let imp = rel(2, &[0b00, 0b10, 0b11]);
        let c = classify_relation(&imp).unwrap();
        assert!(c.horn && c.dualhorn && c.bijunctive);
        assert!(!c.affine);
        assert!(c.zero_valid && c.one_valid);
        assert!(c.is_schaefer());
    }

    #[test]
    fn one_in_three_is_not_schaefer() {
        let r = rel(3, &[0b001, 0b010, 0b100]);
        let c = classify_relation(&r).unwrap();
        assert!(!c.horn && !c.dualhorn && !c.bijunctive && !c.affine);
        assert!(!c.zero_valid && !c.one_valid);
        assert!(!c.is_schaefer());
    }

    #[test]
    fn xor_relation() {
        let xor1 = rel(2, &[0b01, 0b10]);
        let c = classify_relation(&xor1).unwrap();
        assert!(c.affine && c.bijunctive);
        assert!(!c.horn && !c.dualhorn);
        assert!(!c.zero_valid && !c.one_valid);
    }

    #[test]
    fn arity_cap_enforced() {
        let wide = rel(9, &[0]);
        assert_eq!(
            classify_relation(&wide).unwrap_err(),
            SchaeferError::ArityCap { arity: 9, cap: 8 }
        );
    }

    #[test]
    fn language_classification_is_the_meet() {
        let mut lang = BTreeMap::new();
        lang.insert("Imp".to_string(), rel(2, &[0b00, 0b10, 0b11]));
        lang.insert("Xor1".to_string(), rel(2, &[0b01, 0b10]));
        let c = classify_language(&lang).unwrap();
        // Imp is not affine, Xor1 is not Horn; only bijunctive survives.
        assert!(c.bijunctive);
        assert!(!c.horn && !c.dualhorn && !c.affine);

        let empty = classify_language(&BTreeMap::new()).unwrap();
        assert!(empty.horn && empty.dualhorn && empty.bijunctive && empty.affine);
    }

    /// Flags agree with an independently coded closure check on every
    /// relation of arity up to 3 (all 255 nonempty tuple sets per arity).
    #[test]
    fn agrees_with_direct_recomputation_exhaustively() {
        for arity in 1usize..=3 {
            let space = 1u16 << arity;
            for subset in 1u32..(1u32 << space) {
                let masks: Vec<u16> =
                    (0..space).filter(|&m| subset >> m & 1 == 1).collect();
                let r = rel(arity, &masks);
                let got = classify_relation(&r).unwrap();

                let tuples: Vec<Vec<bool>> = r.tuples().to_vec();
                let has = |t: &[bool]| r.contains(t);
                let mut horn = true;
                let mut dualhorn = true;
                let mut bijunctive = true;
                let mut affine = true;
                for a in &tuples {
                    for b in &tuples {
                        let and: Vec<bool> =
                            a.iter().zip(b).map(|(&p, &q)| p && q).collect();
                        let or: Vec<bool> =
                            a.iter().zip(b).map(|(&p, &q)| p || q).collect();
                        horn &= has(&and);
                        dualhorn &= has(&or);
                        for c in &tuples {
                            let maj: Vec<bool> = (0..arity)
                                .map(|i| {
                                    (a[i] as u8 + b[i] as u8 + c[i] as u8) >= 2
                                })
                                .collect();
                            let xor: Vec<bool> =
                                (0..arity).map(|i| a[i] ^ b[i] ^ c[i]).collect();
                            bijunctive &= has(&maj);
                            affine &= has(&xor);
                        }
                    }
                }
                assert_eq!(got.horn, horn, "{arity} {subset:b}");
                assert_eq!(got.dualhorn, dualhorn, "{arity} {subset:b}");
                assert_eq!(got.bijunctive, bijunctive, "{arity} {subset:b}");
                assert_eq!(got.affine, affine, "{arity} {subset:b}");
                assert_eq!(got.zero_valid, has(&vec![false; arity]));
                assert_eq!(got.one_valid, has(&vec![true; arity]));
            }
        }
    }
}
