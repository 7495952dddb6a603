/// Registry of claim anchors: every check record names one of these.
pub const ANCHORS: &[(&str, &str)] = &[
    ("graded-dimension", "dimension of the degree-n piece is C(n+3, 3)"),
    ("quadratic-relations", "the six quadratic relations vanish"),
    ("degree-two-kernel", "the degree-two kernel of the free algebra has dimension 6"),
    ("auxiliary-relations", "two-term relations among generators and auxiliary elements"),
    ("opposite-ring", "the ring with inverted parameters has the same dimensions"),
    ("resolution-identities", "consecutive maps of the resolution compose to zero"),
    ("resolution-exactness", "the resolution is exact in each degree"),
    ("euler-identity", "alternating sum of term dimensions"),
    ("ext-vanishing", "Ext^0 and Ext^1 vanish"),
    ("ext4-quotient", "Hilbert function of R / (R z9 + R z10)"),
    ("orbit-reduction", "orbit coordinates reduce to rho^n and -1 modulo theta"),
    ("orbit-defined", "orbit points are defined"),
    ("critical-density", "critical-density determinant is nonzero"),
    ("base-locus", "base locus of the pulled back coordinate curves"),
    ("fat-point-independence", "fat-point conditions are independent"),
    ("sections-equal-ring", "ring piece equals the space of sections"),
    ("monomial-region", "monomial basis at the degenerate value"),
    ("monomial-cohomology", "h0 and h1 of the monomial sheaves"),
    ("non-noetherian-witness", "u v^(2n-1) t^n escapes the ideal of earlier witnesses"),
    ("diamond-confluence", "all overlaps of the rewriting system resolve"),
    ("irreducible-count", "irreducible words count the graded dimension"),
    ("syzygy-kernel", "syzygies of pairs of generators"),
    ("fatfiber-cech", "first cohomology on the fat fiber"),
    ("fatfiber-stabilization", "t acts bijectively and cohomology stabilizes in the fiber order"),
    ("point-module-filtration", "filtration by point modules"),
    ("r1p-length", "length of the first derived pushforward"),
    ("pushforward-split", "splitting of the direct image and vanishing of its h1"),
    ("leray-balance", "Leray count on the surface and the base line"),
];

pub fn is_registered(anchor: &str) -> bool {
    ANCHORS.iter().any(|(a, _)| *a == anchor)
}
