#pragma once

// httplib pulls in <resolv.h>, whose `_res` macro collides with identifiers in other headers (Eigen).
#include <httplib.h>

#ifdef _res
#undef _res
#endif
