#include "nearsq/report.hpp"

// header-only sink; this translation unit just anchors the target
