//! Text printed by `--explain`.

pub(crate) fn text(command: &str) -> &'static str {
    match command {
        "cartesian-test" => {
            "cartesian-test: decide whether F = G(x,y) H + K(s,t) L for the given G and K.\n\
             For squarefree G, K this holds exactly when F vanishes on Z(G) x Z(K).\n\
             F is divided by G; the remainder is written as sum R_ij(s,t) x^i y^j and\n\
             K must divide every R_ij. Success reports the verified witness (G, K, H, L);\n\
             otherwise the first (i, j) with K not dividing R_ij is reported (exit 2).\n\
             Non-squarefree G or K are replaced by their squarefree parts and flagged.\n"
        }
        "alon-test" => {
            "alon-test: decide whether f(x,y) = g(x) h + k(y) l for univariate g, k.\n\
             For squarefree g, k this holds exactly when f vanishes on Z(g) x Z(k).\n\
             A failure certificate names the remainder coefficient not divisible by k (exit 2).\n"
        }
        "grid-witness" => {
            "grid-witness: given finite I, J with I x J inside Z(F) and |I|, |J| > d^2\n\
             (d = deg F), recover G through I and K through J of degree <= d so that F is\n\
             (G, K)-Cartesian. Curves through subsets of size |I| - (d-1)^2 are tried when\n\
             no curve through all of I works. Coverage |I ∩ Z(G)|, |J ∩ Z(K)| is reported.\n\
             A grid not inside Z(F), or too small, exits 2.\n"
        }
        "count" => {
            "count: exact |Z(F) ∩ (P x Q)|, or the number of common zeros of a\n\
             two-polynomial system. Reported next to the envelopes\n\
             |P|^(2/3)|Q|^(2/3) + |P| + |Q| (surfaces), |P| + |Q| (dimension two) and\n\
             |P|^(2/3)|Q|^(2/3), with count/envelope ratios. A polynomial that is not\n\
             Cartesian has O(|P|^(2/3)|Q|^(2/3) + |P| + |Q|) such points, up to an epsilon\n\
             in the exponent over C.\n"
        }
        "incidence" => {
            "incidence: incidence graph of P and the curves C_q = {F(x, y, q) = 0},\n\
             with duplicate curves (equal squarefree parts), degenerate q (C_q the whole\n\
             plane) and an exhaustive search for K_{s,t}. Bounds of Szemeredi-Trotter type\n\
             need the graph to avoid K_{2,M} and K_{M,2}.\n"
        }
        "partition" => {
            "partition: with tau = 2dM, colour P greedily so that no two points of one\n\
             part lie on tau common curves C_q, set aside Q0 = {q : |C_q ∩ P| < tau} and\n\
             colour Q \\ Q0 dually. Without K_{M,M} at most dM + 1 colours are needed on\n\
             each side, and every part pair avoids K_{2,tau} and K_{tau,2}, which is\n\
             re-checked (exit 2 if it fails).\n"
        }
        "values" => {
            "values: repeated: |{(p, q) in P x P : F(p, q) = a}|, against |P|^(4/3).\n\
             distinct: |F(P x P)|, against |P|^(2/3), with the best row max_p |F(p x P)|.\n\
             map-fiber: pairs with (F1, F2)(p, q) = (a, b), plus a coprimality check.\n\
             map-distinct: |(F1, F2)(P x P)|, against |P|.\n"
        }
        "construct" => {
            "construct: build an instance with a known count.\n\
             elekes:L,M      F = xs - y + t on [1,L]x[1,LM] and [1,M]x[1,LM]\n\
             elekes-d:L,M,D  F = xs + y^D - t^D, via integer surrogate coordinates\n\
             valtr:L         F = (x - s)^2 + y - t on [1,L]x[1,2L^2]\n\
             saturation:N,S  seeded Cartesian F with N points on each graph curve\n\
             diagonal:N,S    the system x - s, y - t on N seeded points\n"
        }
        "probe" => {
            "probe: look for a factor of F in one plane only (F = K(s,t) L or G(x,y) H),\n\
             list candidates q with F(x, y, q) identically zero (at most d^2 of them\n\
             when there is no such factor; exit 2 otherwise), and with --poly2 and --at\n\
             classify the fibre of F1 = F2 = 0 over (s, t) = q as empty, finite (with the\n\
             Bezout bound) or containing a curve.\n"
        }
        _ => "run: execute a stored ExperimentConfig (JSON); produces the same report as the original command.\n",
    }
}
