#include <math.h>
#include <stdio.h>
#include <string.h>

#include "wfscope.h"

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond,  \
              wfs_last_error_message());                              \
      return 1;                                                       \
    }                                                                 \
  } while (0)

static const char *GAUSSIAN = "{\"kind\":\"gaussian\",\"center\":0.0,\"width\":1.0}";
static const char *JUMP = "{\"kind\":\"heaviside_gaussian\",\"jump_point\":0.5,\"width\":1.0}";

int main(void) {
  WfsWindow *w = NULL;
  WfsComplex a0 = {1.0, 0.0};
  CHECK(wfs_window_gaussian(0.25, 1.0, a0, &w) == WFS_STATUS_OK);

  WfsComplex v;
  CHECK(wfs_wpt_point_signal(GAUSSIAN, w, 0.0, 0.0, &v) == WFS_STATUS_OK);
  CHECK(fabs(v.re - sqrt(M_PI)) < 1e-10 && fabs(v.im) < 1e-10);

  WfsField *f = NULL;
  CHECK(wfs_field_sample_signal(GAUSSIAN, -16.0, 16.0, 1024, &f) == WFS_STATUS_OK);
  CHECK(wfs_field_len(f) == 1024);
  WfsComplex s;
  CHECK(wfs_wpt_point_field(f, w, 0.0, 0.0, &s) == WFS_STATUS_OK);
  CHECK(fabs(s.re - sqrt(M_PI)) < 1e-8);

  WfsPotential *zero = NULL;
  CHECK(wfs_potential_zero(&zero) == WFS_STATUS_OK);
  WfsField *g = NULL;
  CHECK(wfs_evolve(f, zero, 0.0, 1.0, 1e-3, WFS_SCHEME_MEHLER_EXACT, &g) == WFS_STATUS_OK);
  WfsComplex buf[1024];
  CHECK(wfs_field_values(g, buf, 1024) == WFS_STATUS_OK);
  CHECK(fabs(hypot(buf[512].re, buf[512].im) - 1.0) < 1e-10);

  WfsPhasePoint p = {0.3, 1.0};
  WfsPhasePoint q = wfs_exact_ho_flow(0.0, M_PI, p);
  CHECK(fabs(q.x + 0.3) < 1e-12 && fabs(q.xi + 1.0) < 1e-12);

  WfsVerdict verdict;
  double order;
  CHECK(wfs_detect_point(JUMP, 0.4, 1024.0, zero, M_PI, -0.5, 1.0, &verdict, &order) ==
        WFS_STATUS_OK);
  CHECK(verdict == WFS_VERDICT_SINGULAR);

  CHECK(wfs_field_sample_signal("{\"kind\":\"nope\"}", -1.0, 1.0, 8, &g) ==
        WFS_STATUS_INVALID_ARGUMENT);
  CHECK(strlen(wfs_last_error_message()) > 0);
  CHECK(wfs_field_values(NULL, buf, 1) == WFS_STATUS_NULL_POINTER);

  wfs_field_free(f);
  wfs_field_free(g);
  wfs_window_free(w);
  wfs_potential_free(zero);
  wfs_field_free(NULL);
  printf("ok %s\n", wfs_version());
  return 0;
}
