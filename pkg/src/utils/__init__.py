# Utils package for Adjust
