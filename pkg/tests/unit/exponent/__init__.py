# Unit tests for exactrc.exponent
