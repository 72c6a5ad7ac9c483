from derivator_combinatorics.cli import main

raise SystemExit(main())
