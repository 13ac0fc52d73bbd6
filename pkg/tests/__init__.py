# Tests for covosc
