# Tests for schramm-bv
