#pragma once

#include <complex>
#include <vector>

namespace expara {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;
using rvec = std::vector<double>;

}  // namespace expara
