from covergraph.cli import main

raise SystemExit(main())
