//! Reference data for the acceptance suite.

// The x column is the exact grid 0.02 * i; 3.14 is 157/50, not a rounded pi.
#![allow(clippy::approx_constant)]

/// Reference density curve for the (3,3,3) perfect-matching cost on the
/// uniform grid x = 0.00, 0.02, ..., 4.00 (201 points), rounded to four
/// decimals. The computed density must match to within 5e-4 absolute.
#[rustfmt::skip]
pub const DENSITY_CURVE_3_3_3: [(f64, f64); 201] = [
    (0.0, 0.0), (0.02, 0.0012), (0.04, 0.0046), (0.06, 0.0101),
    (0.08, 0.0176), (0.10, 0.0269), (0.12, 0.0379), (0.14, 0.0504),
    (0.16, 0.0642), (0.18, 0.0793), (0.20, 0.0954), (0.22, 0.1125),
    (0.24, 0.1304), (0.26, 0.1490), (0.28, 0.1681), (0.30, 0.1877),
    (0.32, 0.2076), (0.34, 0.2277), (0.36, 0.2479), (0.38, 0.2681),
    (0.40, 0.2883), (0.42, 0.3083), (0.44, 0.3280), (0.46, 0.3474),
    (0.48, 0.3665), (0.50, 0.3851), (0.52, 0.4032), (0.54, 0.4207),
    (0.56, 0.4376), (0.58, 0.4539), (0.60, 0.4696), (0.62, 0.4845),
    (0.64, 0.4987), (0.66, 0.5122), (0.68, 0.5249), (0.70, 0.5368),
    (0.72, 0.5479), (0.74, 0.5582), (0.76, 0.5677), (0.78, 0.5764),
    (0.80, 0.5844), (0.82, 0.5915), (0.84, 0.5978), (0.86, 0.6034),
    (0.88, 0.6082), (0.90, 0.6123), (0.92, 0.6156), (0.94, 0.6183),
    (0.96, 0.6202), (0.98, 0.6214), (1.00, 0.6220), (1.02, 0.6220),
    (1.04, 0.6213), (1.06, 0.6201), (1.08, 0.6183), (1.10, 0.6159),
    (1.12, 0.6131), (1.14, 0.6097), (1.16, 0.6059), (1.18, 0.6016),
    (1.20, 0.5969), (1.22, 0.5918), (1.24, 0.5863), (1.26, 0.5805),
    (1.28, 0.5743), (1.30, 0.5678), (1.32, 0.5611), (1.34, 0.5540),
    (1.36, 0.5468), (1.38, 0.5393), (1.40, 0.5316), (1.42, 0.5237),
    (1.44, 0.5157), (1.46, 0.5075), (1.48, 0.4992), (1.50, 0.4907),
    (1.52, 0.4822), (1.54, 0.4736), (1.56, 0.4649), (1.58, 0.4562),
    (1.60, 0.4474), (1.62, 0.4386), (1.64, 0.4298), (1.66, 0.4210),
    (1.68, 0.4122), (1.70, 0.4035), (1.72, 0.3947), (1.74, 0.3860),
    (1.76, 0.3773), (1.78, 0.3688), (1.80, 0.3602), (1.82, 0.3518),
    (1.84, 0.3434), (1.86, 0.3351), (1.88, 0.3269), (1.90, 0.3188),
    (1.92, 0.3107), (1.94, 0.3028), (1.96, 0.2950), (1.98, 0.2874),
    (2.00, 0.2798), (2.02, 0.2723), (2.04, 0.2650), (2.06, 0.2578),
    (2.08, 0.2507), (2.10, 0.2438), (2.12, 0.2369), (2.14, 0.2303),
    (2.16, 0.2237), (2.18, 0.2173), (2.20, 0.2110), (2.22, 0.2048),
    (2.24, 0.1988), (2.26, 0.1928), (2.28, 0.1871), (2.30, 0.1814),
    (2.32, 0.1759), (2.34, 0.1705), (2.36, 0.1653), (2.38, 0.1601),
    (2.40, 0.1551), (2.42, 0.1503), (2.44, 0.1455), (2.46, 0.1409),
    (2.48, 0.1364), (2.50, 0.1320), (2.52, 0.1277), (2.54, 0.1235),
    (2.56, 0.1195), (2.58, 0.1155), (2.60, 0.1117), (2.62, 0.1080),
    (2.64, 0.1044), (2.66, 0.1008), (2.68, 0.0974), (2.70, 0.0941),
    (2.72, 0.0909), (2.74, 0.0878), (2.76, 0.0847), (2.78, 0.0818),
    (2.80, 0.0790), (2.82, 0.0762), (2.84, 0.0735), (2.86, 0.0709),
    (2.88, 0.0684), (2.90, 0.0660), (2.92, 0.0636), (2.94, 0.0613),
    (2.96, 0.0591), (2.98, 0.0570), (3.00, 0.0549), (3.02, 0.0529),
    (3.04, 0.0510), (3.06, 0.0491), (3.08, 0.0473), (3.10, 0.0456),
    (3.12, 0.0439), (3.14, 0.0422), (3.16, 0.0407), (3.18, 0.0391),
    (3.20, 0.0377), (3.22, 0.0363), (3.24, 0.0349), (3.26, 0.0336),
    (3.28, 0.0323), (3.30, 0.0311), (3.32, 0.0299), (3.34, 0.0287),
    (3.36, 0.0276), (3.38, 0.0265), (3.40, 0.0255), (3.42, 0.0245),
    (3.44, 0.0236), (3.46, 0.0227), (3.48, 0.0218), (3.50, 0.0209),
    (3.52, 0.0201), (3.54, 0.0193), (3.56, 0.0185), (3.58, 0.0178),
    (3.60, 0.0171), (3.62, 0.0164), (3.64, 0.0158), (3.66, 0.0151),
    (3.68, 0.0145), (3.70, 0.0139), (3.72, 0.0134), (3.74, 0.0128),
    (3.76, 0.0123), (3.78, 0.0118), (3.80, 0.0113), (3.82, 0.0109),
    (3.84, 0.0104), (3.86, 0.0100), (3.88, 0.0096), (3.90, 0.0092),
    (3.92, 0.0088), (3.94, 0.0085), (3.96, 0.0081), (3.98, 0.0078),
    (4.00, 0.0075),
];
