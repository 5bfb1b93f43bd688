#pragma once

#include <string>

namespace xwigner {

/// Compact machine-readable record of every sign and ordering choice this
/// library commits to. Written into the header of every serialized artifact
/// so that files are self-describing; docs/conventions.md spells each token
/// out. Whitespace-free by design (header lines parse on '=').
inline const std::string& sign_ledger() {
    static const std::string ledger =
        "v1;ft:e^{-ipx/hbar};ip:conj-left;sigma:p.x'-p'.x;"
        "cw:(2pi.hbar)^-1.int.e^{-ipy/hbar}.conj(phi)(x-y/2).psi(x+y/2).dy;"
        "hw:e^{i(p0.x-p0.x0/2)/hbar}psi(x-x0);gr:e^{2ip0(x-x0)/hbar}psi(2x0-x);"
        "chi:sigma(z,a-b)+sigma(a,b)/2;fid:(pi.hbar)^-1/4.e^{-x^2/2hbar};"
        "weyl:(pi.hbar)^-N.int.A(z0).T_gr(z0).dz0";
    return ledger;
}

}  // namespace xwigner
