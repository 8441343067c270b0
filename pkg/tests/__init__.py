# Tests for harmonic-eigenpoints
