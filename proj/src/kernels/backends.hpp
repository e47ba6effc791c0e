#pragma once

#include "irisvc/kernels.hpp"

namespace irisvc::kernels::detail {

const KernelTable& scalar_table();
#if defined(IRISVC_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(IRISVC_HAVE_NEON)
const KernelTable& neon_table();
#endif

}  // namespace irisvc::kernels::detail
