# Unit tests for exactrc.oracle
