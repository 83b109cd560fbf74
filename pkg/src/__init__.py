# This file makes the src directory a package
