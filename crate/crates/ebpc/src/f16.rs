//! Minimal IEEE binary16 arithmetic via f32.
//!
//! binary16 -> f32 is exact; rounding an exact f32 sum back to binary16 with
//! round-to-nearest-even is correctly rounded (f32's 24-bit significand meets
//! the 2*11+2 double-rounding bound for 11-bit binary16 significands).

/// Exact widening conversion.
pub fn f16_to_f32(bits: u16) -> f32 {
    let sign = u32::from(bits >> 15) << 31;
    let exp = (bits >> 10) & 0x1F;
    let frac = u32::from(bits & 0x3FF);
    let out = if exp == 0 {
        if frac == 0 {
            sign
        } else {
            // subnormal: normalize
            let shift = frac.leading_zeros() - 22;
            let frac = (frac << (shift + 1)) & 0x3FF;
            let exp32 = 127 - 15 - shift;
            sign | (exp32 << 23) | (frac << 13)
        }
    } else if exp == 0x1F {
        sign | 0x7F80_0000 | (frac << 13)
    } else {
        sign | ((u32::from(exp) + 127 - 15) << 23) | (frac << 13)
    };
    f32::from_bits(out)
}

/// Narrowing conversion with round-to-nearest-even.
pub fn f32_to_f16(value: f32) -> u16 {
    let bits = value.to_bits();
    let sign = ((bits >> 16) & 0x8000) as u16;
    let exp32 = ((bits >> 23) & 0xFF) as i32;
    let frac32 = bits & 0x7F_FFFF;

    if exp32 == 0xFF {
        // inf / NaN
        let frac16 = if frac32 != 0 { 0x200 } else { 0 };
        return sign | 0x7C00 | frac16;
    }

    let exp16 = exp32 - 127 + 15;
    if exp16 >= 0x1F {
        return sign | 0x7C00; // overflow to inf
    }

    // mantissa with implicit leading 1 (zero for f32 subnormals, which all
    // round to +-0 in binary16 anyway)
    let mant = if exp32 == 0 { frac32 } else { frac32 | 0x80_0000 };

    // bits to shift off: 13 for normal results, more when the result is
    // subnormal in binary16
    let shift = (if exp16 <= 0 { 14 - exp16 } else { 13 }) as u32;
    if shift >= 32 {
        return sign;
    }
    let kept = mant >> shift;
    let rem = mant & ((1 << shift) - 1);
    let half = 1u32 << (shift - 1);
    let rounded = match rem.cmp(&half) {
        std::cmp::Ordering::Greater => kept + 1,
        std::cmp::Ordering::Equal => kept + (kept & 1),
        std::cmp::Ordering::Less => kept,
    };

    if exp16 <= 0 {
        // subnormal or rounded up into the smallest normal
        sign | rounded as u16
    } else {
        // carry out of the mantissa bumps the exponent (handled by the
        // adjacent bit layout: 0x3FF + 1 propagates into the exponent field)
        let base = ((exp16 as u32) << 10) + (rounded - (1 << 10));
        if base >= 0x7C00 {
            sign | 0x7C00
        } else {
            sign | base as u16
        }
    }
}

/// Correctly rounded binary16 subtraction on bit patterns.
pub fn f16_sub(a: u16, b: u16) -> u16 {
    f32_to_f16(f16_to_f32(a) - f16_to_f32(b))
}

/// Correctly rounded binary16 addition on bit patterns.
pub fn f16_add(a: u16, b: u16) -> u16 {
    f32_to_f16(f16_to_f32(a) + f16_to_f32(b))
}
