use std::f64::consts::PI;

use super::{Domain, QuadRule};
use crate::error::{Error, Result};

/// Order of the hybrid Gauss-trapezoidal rule for `log|x|` singularities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum AlpertOrder {
    Four,
    Eight,
    #[default]
    Sixteen,
}

/// Correction nodes `x_k` and weights `w_k` (in units of the grid spacing)
/// that replace the trapezoidal nodes `0 < |i| < a` on each side of the
/// singular point.
#[derive(Debug, Clone, Copy)]
pub struct AlpertTable {
    pub nodes: &'static [f64],
    pub weights: &'static [f64],
    pub a: usize,
}

// Solved in 80-digit arithmetic from the moment equations
//   Σ w x^β        = −ζ(−β)  + Σ_{i<a} i^β
//   Σ w x^β log x  =  ζ'(−β) + Σ_{i<a} i^β log i,   β = 0..j−1
// (see scripts/alpert_log_rules.py); they agree with the values published by Alpert (1999).
const NODES_4: [f64; 3] = [
    2.379_647_284_118_973_696_785_82e-2,
    2.935_370_741_501_914_567_962_32e-1,
    1.023_715_124_251_890_253_013_9,
];
const WEIGHTS_4: [f64; 3] = [
    8.795_942_675_593_886_625_687_37e-2,
    4.989_017_152_913_699_103_467_14e-1,
    9.131_388_579_526_912_233_964_13e-1,
];

const NODES_8: [f64; 7] = [
    6.531_815_708_567_918_290_235_99e-3,
    9.086_744_584_657_728_648_511_71e-2,
    3.967_966_533_375_877_679_508_28e-1,
    1.027_856_640_525_645_700_626_92,
    1.945_288_592_909_266_013_404_49,
    2.980_147_933_889_639_651_583_72,
    3.998_861_349_951_123_044_203_73,
];
const WEIGHTS_8: [f64; 7] = [
    2.462_194_198_995_203_157_808_21e-2,
    1.701_315_866_854_178_098_335_76e-1,
    4.609_256_358_650_077_235_927_18e-1,
    7.947_291_148_621_894_268_169_42e-1,
    1.008_710_414_337_932_589_256_14,
    1.036_093_649_726_215_581_418_51,
    1.004_787_656_533_284_837_504_04,
];

const NODES_16: [f64; 15] = [
    8.371_529_832_014_113_271_563_7e-4,
    1.239_382_725_542_636_982_474_91e-2,
    6.009_290_785_739_467_772_076_61e-2,
    1.805_991_249_601_927_929_276_38e-1,
    4.142_832_599_028_030_884_010_81e-1,
    7.964_747_731_112_429_842_230_29e-1,
    1.348_993_882_467_058_808_928_37,
    2.073_471_660_264_395_027_695_2,
    2.947_904_939_031_493_804_756_89,
    3.928_129_252_248_611_745_278_37,
    4.957_203_086_563_111_694_870_91,
    5.986_360_113_977_494_222_055_32,
    6.997_957_704_791_519_278_242_02,
    7.999_888_757_524_622_397_419_37,
    8.999_998_754_306_119_601_289_33,
];
const WEIGHTS_16: [f64; 15] = [
    3.190_919_086_626_234_406_311_36e-3,
    2.423_621_380_426_338_019_027_23e-2,
    7.740_135_521_653_087_933_451_1e-2,
    1.704_889_420_286_369_087_236_06e-1,
    3.029_123_478_511_308_610_304_14e-1,
    4.652_220_834_914_616_653_323_62e-1,
    6.401_489_637_096_768_365_019_08e-1,
    8.051_212_946_181_061_154_402_72e-1,
    9.362_411_945_698_646_544_249_52e-1,
    1.014_359_775_369_075_169_130_04,
    1.035_167_721_053_656_806_351_67,
    1.020_308_624_984_610_370_790_72,
    1.004_798_397_441_513_981_572_31,
    1.000_395_017_352_309_274_014_01,
    1.000_007_149_422_536_862_756_63,
];

impl AlpertOrder {
    pub fn from_order(order: usize) -> Result<Self> {
        match order {
            4 => Ok(AlpertOrder::Four),
            8 => Ok(AlpertOrder::Eight),
            16 => Ok(AlpertOrder::Sixteen),
            _ => Err(Error::Config(format!("unsupported Alpert order {order}; use 4, 8 or 16"))),
        }
    }

    pub fn order(self) -> usize {
        match self {
            AlpertOrder::Four => 4,
            AlpertOrder::Eight => 8,
            AlpertOrder::Sixteen => 16,
        }
    }

    pub fn table(self) -> AlpertTable {
        match self {
            AlpertOrder::Four => AlpertTable { nodes: &NODES_4, weights: &WEIGHTS_4, a: 2 },
            AlpertOrder::Eight => AlpertTable { nodes: &NODES_8, weights: &WEIGHTS_8, a: 5 },
            AlpertOrder::Sixteen => AlpertTable { nodes: &NODES_16, weights: &WEIGHTS_16, a: 10 },
        }
    }

    /// Smallest grid the rule makes sense on: the two correction zones must
    /// not overlap and leave at least one trapezoidal node between them.
    pub fn min_points(self) -> usize {
        2 * self.table().a + 2
    }
}

/// Rule for `∫₀^{2π} f(θ) dθ` on an `m`-point equispaced grid, where `f` has a
/// log singularity (or an odd, principal-value singularity) at θ = 0.
///
/// Nodes come in symmetric pairs `±x_k h` (the negative ones wrapped to
/// `2π − x_k h`), followed by the trapezoidal nodes `i h`, `a ≤ i ≤ m − a`.
pub fn alpert_log_rule(order: AlpertOrder, m: usize) -> Result<QuadRule> {
    if m < order.min_points() {
        return Err(Error::Config(format!(
            "order-{} Alpert rule needs at least {} points, got {m}",
            order.order(),
            order.min_points()
        )));
    }
    let t = order.table();
    let h = 2.0 * PI / m as f64;
    let mut nodes = Vec::with_capacity(2 * t.nodes.len() + m);
    let mut weights = Vec::with_capacity(nodes.capacity());
    for (&x, &w) in t.nodes.iter().zip(t.weights) {
        nodes.push(x * h);
        weights.push(w * h);
        nodes.push(2.0 * PI - x * h);
        weights.push(w * h);
    }
    for i in t.a..=m - t.a {
        nodes.push(i as f64 * h);
        weights.push(h);
    }
    Ok(QuadRule {
        nodes,
        weights,
        domain: Domain::PeriodicPunctured { period: 2.0 * PI, singular_at: 0.0 },
        order: order.order(),
    })
}
